#pragma once

#include <string>

#include "subcover/reduction.hpp"
#include "subcover/solvers.hpp"

namespace subcover {

struct ParseError : std::runtime_error {
    int line;  // 1-based, 0 when not tied to a line
    std::string path;  // JSON pointer-ish location for structured documents
    ParseError(const std::string& msg, int ln = 0, std::string p = {})
        : std::runtime_error(msg), line(ln), path(std::move(p)) {}
};

// .segs format: one segment per line as four whitespace-separated integers
// x1 y1 x2 y2; '#' starts a comment. Parsing reports 1-based line numbers.
SegmentSet parse_segments(const std::string& text);
std::string serialize_segments(const SegmentSet& segs);

// FNV-1a over the canonical serialization; ties solution documents to the
// instance they were computed for.
std::string instance_hash(const SegmentSet& segs);

// Formula documents: {"variables": n, "clauses": [{"literals": [..3..],
// "side": "top"|"bottom"}, ...]}. Serialization uses a stable field order so
// round trips are byte identical.
Rp3SatInstance parse_formula(const std::string& json_text);
std::string serialize_formula(const Rp3SatInstance& inst);

struct SolutionDocument {
    Problem problem = Problem::stab;
    Variant variant = Variant::all;
    std::size_t size = 0;
    bool optimal = false;
    std::string algorithm;
    std::string hash;  // instance hash of the segment set
    std::vector<Point> points;
    std::vector<int> faces;
};

SolutionDocument make_document(const SegmentSet& segs, Problem problem, Variant variant,
                               const PointSolution& sol);
SolutionDocument make_document(const SegmentSet& segs, Problem problem, Variant variant,
                               const FaceSolution& sol);
std::string serialize_solution(const SolutionDocument& doc);
SolutionDocument parse_solution(const std::string& json_text);

// Reduction report: target, per-face manifest, canonical solutions and the
// clause table. Consumed by verifiers in other languages, hence plain JSON.
std::string serialize_reduction_report(const ReductionOutput& out);

std::string serialize_lemma_report(const LemmaReport& rep);

}  // namespace subcover
