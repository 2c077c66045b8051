#include "plumbfill/json_io.hpp"

#include <json.hpp>

namespace plumbfill {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw decode_error("malformed JSON document");
    return j;
}

void check_version(const json& j) {
    if (j.contains("v") && (!j["v"].is_number_integer() || j["v"].get<int>() != 1))
        throw decode_error("unsupported schema version");
}

json strand_role_json(const Strand& s) {
    switch (s.role) {
        case StrandRole::CapCentral: return {{"kind", "central"}};
        case StrandRole::CapArm: return {{"kind", "arm"}, {"arm", s.arm}, {"pos", s.pos}};
        case StrandRole::Auxiliary: return {{"kind", "extra_arm"}, {"slot", s.arm}};
        case StrandRole::Exceptional: return {{"kind", "exceptional"}};
    }
    throw decode_error("unknown role");
}

json class_json(const HomologyClass& c) {
    json e = json::object();
    for (int k = 1; k <= c.N; ++k)
        if (c.coeff(k) != 0) e[std::to_string(k)] = c.coeff(k);
    return {{"l", c.l}, {"e", e}, {"N", c.N}};
}

HomologyClass class_from(const json& j) {
    if (!j.contains("N") || !j.contains("l")) throw decode_error("homology class needs l and N");
    HomologyClass c(j["N"].get<int>(), j["l"].get<long long>());
    if (j.contains("e"))
        for (auto& [key, val] : j["e"].items()) c.set_coeff(std::stoi(key), val.get<long long>());
    return c;
}

}  // namespace

std::string to_json(const SeifertData& d) {
    json arms = json::array();
    for (auto [a, b] : d.pairs) arms.push_back({a, b});
    json j{{"v", 1}, {"b", d.b}, {"arms", arms}};
    return j.dump();
}

SeifertData seifert_from_json(const std::string& text) {
    json j = parse(text);
    check_version(j);
    if (!j.contains("b") || !j.contains("arms")) throw decode_error("Seifert data needs b and arms");
    std::vector<std::pair<long long, long long>> pairs;
    for (const auto& p : j["arms"]) {
        if (!p.is_array() || p.size() != 2) throw decode_error("each arm is a pair [alpha, beta]");
        pairs.emplace_back(p[0].get<long long>(), p[1].get<long long>());
    }
    return SeifertData(j["b"].get<long long>(), std::move(pairs));
}

std::string to_json(const PlumbingGraph& g) {
    json j{{"v", 1}, {"central", g.central_weight}, {"arms", g.arms}};
    return j.dump();
}

PlumbingGraph plumbing_from_json(const std::string& text) {
    json j = parse(text);
    check_version(j);
    PlumbingGraph g;
    g.central_weight = j.at("central").get<long long>();
    for (const auto& arm : j.at("arms")) g.arms.push_back(arm.get<std::vector<long long>>());
    return g;
}

std::string to_json(const HomologyClass& c) {
    json j = class_json(c);
    j["v"] = 1;
    return j.dump();
}

HomologyClass homology_class_from_json(const std::string& text) {
    json j = parse(text);
    check_version(j);
    return class_from(j);
}

std::string to_json(const LineArrangement& a) {
    json j{{"v", 1}, {"n", a.n_lines}, {"points", a.points}};
    return j.dump();
}

LineArrangement arrangement_from_json(const std::string& text) {
    json j = parse(text);
    check_version(j);
    LineArrangement a;
    a.n_lines = j.at("n").get<int>();
    for (const auto& pt : j.at("points")) a.points.push_back(pt.get<std::vector<int>>());
    a.canonicalize();
    a.validate();
    return a;
}

std::string to_json(const ConcaveCap& c) {
    json j{{"v", 1}, {"central", 1}, {"arms", c.essential_arms},
           {"minus_one_arms", c.minus_one_arm_count}};
    return j.dump();
}

ConcaveCap cap_from_json(const std::string& text) {
    json j = parse(text);
    check_version(j);
    ConcaveCap c;
    for (const auto& arm : j.at("arms")) c.essential_arms.push_back(arm.get<std::vector<long long>>());
    c.minus_one_arm_count = j.value("minus_one_arms", 0);
    return c;
}

std::string to_json(const RbdStep& s) {
    json graph;
    if (s.graph.kind == RbdGraph::Linear)
        graph = {{"kind", "linear"}, {"weights", s.graph.weights}};
    else
        graph = {{"kind", "gamma_pqr"}, {"p", s.graph.p}, {"q", s.graph.q}, {"r", s.graph.r}};
    json j{{"v", 1},
           {"graph", graph},
           {"site_point", s.site_point},
           {"ball_choice", to_string(s.ball_choice)},
           {"free_arm", s.free_arm},
           {"affected_arms", s.affected_arms},
           {"exceptional_set", s.exceptional_set}};
    return j.dump();
}

RbdStep step_from_json(const std::string& text) {
    json j = parse(text);
    check_version(j);
    RbdStep s;
    const json& g = j.at("graph");
    if (g.at("kind") == "linear")
        s.graph = RbdGraph::linear(g.at("weights").get<std::vector<long long>>());
    else if (g.at("kind") == "gamma_pqr")
        s.graph = RbdGraph::gamma(g.at("p").get<int>(), g.at("q").get<int>(), g.at("r").get<int>());
    else
        throw decode_error("unknown graph kind");
    s.site_point = j.at("site_point").get<std::vector<int>>();
    s.ball_choice = j.at("ball_choice") == "concurrent" ? BallShape::Concurrent : BallShape::FreeLine;
    s.free_arm = j.value("free_arm", -1);
    s.affected_arms = j.at("affected_arms").get<std::vector<int>>();
    s.exceptional_set = j.at("exceptional_set").get<std::vector<int>>();
    return s;
}

std::string to_json(const FillingDescriptor& d) {
    json arms = json::array();
    json strands = json::array();
    for (const auto& s : d.config.strands) {
        json js{{"id", s.id}, {"role", strand_role_json(s)}, {"class", class_json(s.cls)}};
        strands.push_back(js);
    }
    json seifert;
    {
        json sarms = json::array();
        for (auto [a, b] : d.seifert.pairs) sarms.push_back({a, b});
        seifert = {{"b", d.seifert.b}, {"arms", sarms}};
    }
    json j{{"v", 1},
           {"seifert", seifert},
           {"N", d.config.N},
           {"arm_weights", d.config.arm_weights},
           {"aux_arm_count", d.config.aux_arm_count},
           {"strands", strands},
           {"arrangement", {{"n", d.arrangement.n_lines}, {"points", d.arrangement.points}}},
           {"b2", d.b2},
           {"type", to_string(d.type_tag)},
           {"minimal_resolution", d.minimal_resolution}};
    return j.dump();
}

FillingDescriptor filling_from_json(const std::string& text) {
    json j = parse(text);
    check_version(j);
    FillingDescriptor d;
    {
        const json& s = j.at("seifert");
        std::vector<std::pair<long long, long long>> pairs;
        for (const auto& p : s.at("arms")) pairs.emplace_back(p[0].get<long long>(), p[1].get<long long>());
        d.seifert = SeifertData(s.at("b").get<long long>(), std::move(pairs));
    }
    CurveConfiguration& c = d.config;
    c.N = j.at("N").get<int>();
    for (const auto& arm : j.at("arm_weights")) c.arm_weights.push_back(arm.get<std::vector<long long>>());
    c.aux_arm_count = j.value("aux_arm_count", 0);
    for (const auto& js : j.at("strands")) {
        Strand s;
        s.id = js.at("id").get<int>();
        s.cls = class_from(js.at("class"));
        const json& role = js.at("role");
        std::string kind = role.at("kind").get<std::string>();
        if (kind == "central") s.role = StrandRole::CapCentral;
        else if (kind == "arm") {
            s.role = StrandRole::CapArm;
            s.arm = role.at("arm").get<int>();
            s.pos = role.at("pos").get<int>();
        } else if (kind == "extra_arm") {
            s.role = StrandRole::Auxiliary;
            s.arm = role.at("slot").get<int>();
        } else if (kind == "exceptional") s.role = StrandRole::Exceptional;
        else throw decode_error("unknown strand role");
        c.strands.push_back(std::move(s));
    }
    c.validate();
    d.arrangement = arrangement_of_filling(c.first_arm_classes());
    d.b2 = b2_of(c);
    d.type_tag = classify_type(d);
    if (j.contains("minimal_resolution")) d.minimal_resolution = j["minimal_resolution"].get<bool>();
    return d;
}

std::string to_json(const ReachabilityCertificate& c) {
    json steps = json::array();
    for (const auto& s : c.steps) steps.push_back(json::parse(to_json(s)));
    std::string verdict;
    switch (c.verdict) {
        case ReachabilityCertificate::Reachable: verdict = "reachable"; break;
        case ReachabilityCertificate::Obstructed: verdict = "obstructed"; break;
        case ReachabilityCertificate::UnreachableExhaustive: verdict = "unreachable_exhaustive"; break;
    }
    json j{{"v", 1}, {"verdict", verdict}, {"steps", steps}, {"depth", c.depth}, {"bounded", c.bounded}};
    if (c.verdict == ReachabilityCertificate::Obstructed) j["n_s"] = c.n_s;
    if (c.verdict != ReachabilityCertificate::Reachable || c.explored > 0) j["explored"] = c.explored;
    if (!c.note.empty()) j["note"] = c.note;
    return j.dump();
}

}  // namespace plumbfill
