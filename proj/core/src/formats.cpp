#include "subcover/formats.hpp"

#include <sstream>

#include "json.hpp"

namespace subcover {

using ordered_json = nlohmann::ordered_json;

SegmentSet parse_segments(const std::string& text) {
    std::vector<Segment> segs;
    int line_no = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        long long c[4];
        if (!(ls >> c[0])) continue;  // blank or comment-only line
        for (int i = 1; i < 4; ++i)
            if (!(ls >> c[i]))
                throw ParseError("expected four integers", line_no);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing input after segment", line_no);
        Point a{c[0], c[1]}, b{c[2], c[3]};
        if (a == b) throw ParseError("zero-length segment", line_no);
        if (a.x != b.x && a.y != b.y) throw ParseError("segment is not axis-parallel", line_no);
        segs.emplace_back(a, b);
    }
    if (segs.empty()) throw ParseError("no segments in input", 0);
    return SegmentSet(std::move(segs));
}

std::string serialize_segments(const SegmentSet& segs) {
    std::string out;
    for (const Segment& s : segs.segments()) {
        out += std::to_string(s.a.x) + " " + std::to_string(s.a.y) + " " + std::to_string(s.b.x) +
               " " + std::to_string(s.b.y) + "\n";
    }
    return out;
}

std::string instance_hash(const SegmentSet& segs) {
    std::string text = serialize_segments(segs);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

ordered_json parse_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON", 0);
    return j;
}

Problem problem_from(const std::string& s) {
    if (s == "stab") return Problem::stab;
    if (s == "mis") return Problem::mis;
    if (s == "mds") return Problem::mds;
    throw ParseError("unknown problem tag '" + s + "'", 0, "problem");
}

}  // namespace

Rp3SatInstance parse_formula(const std::string& json_text) {
    ordered_json j = parse_json(json_text);
    Rp3SatInstance inst;
    if (!j.is_object() || !j.contains("variables") || !j["variables"].is_number_integer())
        throw ParseError("missing integer field", 0, "variables");
    inst.variables = j["variables"].get<int>();
    if (!j.contains("clauses") || !j["clauses"].is_array())
        throw ParseError("missing array field", 0, "clauses");
    int idx = 0;
    for (const auto& jc : j["clauses"]) {
        std::string at = "clauses[" + std::to_string(idx) + "]";
        if (!jc.is_object()) throw ParseError("clause must be an object", 0, at);
        if (!jc.contains("literals") || !jc["literals"].is_array() || jc["literals"].size() != 3)
            throw ParseError("clause needs exactly 3 literals", 0, at + ".literals");
        Clause c;
        for (int t = 0; t < 3; ++t) {
            if (!jc["literals"][t].is_number_integer())
                throw ParseError("literal must be an integer", 0,
                                 at + ".literals[" + std::to_string(t) + "]");
            c.literals[t] = jc["literals"][t].get<int>();
            if (c.literals[t] == 0)
                throw ParseError("literal 0 is not a variable", 0,
                                 at + ".literals[" + std::to_string(t) + "]");
        }
        if (!jc.contains("side") || !jc["side"].is_string())
            throw ParseError("missing string field", 0, at + ".side");
        std::string side = jc["side"].get<std::string>();
        if (side == "top") c.side = Side::top;
        else if (side == "bottom") c.side = Side::bottom;
        else throw ParseError("side must be 'top' or 'bottom'", 0, at + ".side");
        inst.clauses.push_back(c);
        idx++;
    }
    return inst;
}

std::string serialize_formula(const Rp3SatInstance& inst) {
    ordered_json j;
    j["variables"] = inst.variables;
    j["clauses"] = ordered_json::array();
    for (const Clause& c : inst.clauses) {
        ordered_json jc;
        jc["literals"] = c.literals;
        jc["side"] = side_name(c.side);
        j["clauses"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

namespace {

ordered_json points_json(const std::vector<Point>& pts) {
    ordered_json arr = ordered_json::array();
    for (const Point& p : pts) arr.push_back({p.x, p.y});
    return arr;
}

}  // namespace

SolutionDocument make_document(const SegmentSet& segs, Problem problem, Variant variant,
                               const PointSolution& sol) {
    SolutionDocument doc;
    doc.problem = problem;
    doc.variant = variant;
    doc.size = sol.size();
    doc.optimal = sol.optimal;
    doc.algorithm = sol.algorithm;
    doc.hash = instance_hash(segs);
    doc.points = sol.points;
    return doc;
}

SolutionDocument make_document(const SegmentSet& segs, Problem problem, Variant variant,
                               const FaceSolution& sol) {
    SolutionDocument doc;
    doc.problem = problem;
    doc.variant = variant;
    doc.size = sol.size();
    doc.optimal = sol.optimal;
    doc.algorithm = sol.algorithm;
    doc.hash = instance_hash(segs);
    doc.faces = sol.face_ids;
    return doc;
}

std::string serialize_solution(const SolutionDocument& doc) {
    ordered_json j;
    j["problem"] = problem_name(doc.problem);
    j["variant"] = variant_name(doc.variant);
    j["size"] = doc.size;
    j["optimal"] = doc.optimal;
    j["algorithm"] = doc.algorithm;
    j["instance"] = doc.hash;
    if (doc.problem == Problem::stab)
        j["points"] = points_json(doc.points);
    else
        j["faces"] = doc.faces;
    return j.dump(2) + "\n";
}

SolutionDocument parse_solution(const std::string& json_text) {
    ordered_json j = parse_json(json_text);
    SolutionDocument doc;
    for (const char* field : {"problem", "variant", "size", "optimal", "algorithm", "instance"})
        if (!j.contains(field)) throw ParseError("missing field", 0, field);
    doc.problem = problem_from(j["problem"].get<std::string>());
    doc.variant = j["variant"].get<std::string>() == "rect" ? Variant::rect : Variant::all;
    doc.size = j["size"].get<std::size_t>();
    doc.optimal = j["optimal"].get<bool>();
    doc.algorithm = j["algorithm"].get<std::string>();
    doc.hash = j["instance"].get<std::string>();
    if (doc.problem == Problem::stab) {
        if (!j.contains("points") || !j["points"].is_array())
            throw ParseError("missing array field", 0, "points");
        for (const auto& jp : j["points"]) {
            if (!jp.is_array() || jp.size() != 2)
                throw ParseError("point must be [x, y]", 0, "points");
            doc.points.push_back({jp[0].get<coord_t>(), jp[1].get<coord_t>()});
        }
    } else {
        if (!j.contains("faces") || !j["faces"].is_array())
            throw ParseError("missing array field", 0, "faces");
        for (const auto& jf : j["faces"]) doc.faces.push_back(jf.get<int>());
    }
    if (doc.size != (doc.problem == Problem::stab ? doc.points.size() : doc.faces.size()))
        throw ParseError("size does not match the solution payload", 0, "size");
    return doc;
}

namespace {

const char* class_name(FaceClass c) {
    switch (c) {
        case FaceClass::generic: return "generic";
        case FaceClass::variable: return "variable";
        case FaceClass::clause: return "clause";
        case FaceClass::outer: return "outer";
    }
    return "?";
}

}  // namespace

std::string serialize_reduction_report(const ReductionOutput& out) {
    ordered_json j;
    j["problem"] = problem_name(out.problem);
    j["variant"] = variant_name(out.variant);
    j["target"] = out.target;
    j["instance"] = instance_hash(out.segments);
    j["faces"] = ordered_json::array();
    for (const ManifestEntry& e : out.manifest) {
        ordered_json je;
        je["face"] = e.face;
        je["class"] = class_name(e.cls);
        if (e.gadget) je["variable"] = e.gadget;
        if (e.clause) je["clause"] = e.clause;
        je["name"] = e.name;
        je["rect"] = out.subdivision.faces()[e.face].is_rectangle;
        j["faces"].push_back(je);
    }
    j["canonical"] = ordered_json::array();
    const std::size_t n = out.problem == Problem::stab ? out.points_true.size()
                                                       : out.faces_true.size();
    for (std::size_t i = 0; i < n; ++i) {
        ordered_json jv;
        jv["variable"] = i + 1;
        if (out.problem == Problem::stab) {
            jv["when_true"] = points_json(out.points_true[i]);
            jv["when_false"] = points_json(out.points_false[i]);
        } else {
            jv["when_true"] = out.faces_true[i];
            jv["when_false"] = out.faces_false[i];
        }
        j["canonical"].push_back(jv);
    }
    j["clauses"] = ordered_json::array();
    for (std::size_t a = 0; a < out.clause_info.size(); ++a) {
        const ClauseGeometry& cg = out.clause_info[a];
        ordered_json jc;
        jc["clause"] = a + 1;
        jc["side"] = side_name(cg.side);
        jc["level"] = cg.level;
        jc["pierced"] = cg.pierced;
        jc["faces"] = cg.faces;
        jc["literal_faces"] = cg.literal_faces;
        j["clauses"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

std::string serialize_lemma_report(const LemmaReport& rep) {
    ordered_json j;
    j["satisfiable"] = rep.satisfiable;
    j["target"] = rep.target;
    j["target_solution_exists"] = rep.target_solution_exists;
    j["forward_check"] = rep.forward_ok;
    switch (rep.converse) {
        case LemmaReport::Converse::verified: j["converse_check"] = "verified"; break;
        case LemmaReport::Converse::inconclusive: j["converse_check"] = "inconclusive"; break;
        case LemmaReport::Converse::refuted: j["converse_check"] = "refuted"; break;
    }
    j["details"] = rep.details;
    return j.dump(2) + "\n";
}

}  // namespace subcover
