#pragma once

#include <array>
#include <vector>

#include "subcover/reduction.hpp"

namespace subcover::detail {

struct LitRef {
    int var = 0;          // 1-based
    bool positive = true;
};

// A clause with its drawing data: nesting level on its side, literals in
// variable order, and the slot index ("k-th clause for x_i") at each of its
// three variables.
struct PlannedClause {
    int index = 0;  // position in the input clause list
    Side side = Side::top;
    int level = 0;
    std::array<LitRef, 3> lits{};
    std::array<int, 3> slot{};  // 1-based
    int span_min = 0, span_max = 0;
};

struct LayoutPlan {
    std::vector<PlannedClause> clauses;  // input order
    int max_level_top = -1;
    int max_level_bottom = -1;
};

// Computes levels and slots. Throws ReductionError(layout_invalid) when
// validate_layout reports violations.
LayoutPlan plan_layout(const Rp3SatInstance& inst);

}  // namespace subcover::detail
