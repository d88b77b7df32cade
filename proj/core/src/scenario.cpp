#include "salvo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "salvo/errors.hpp"

namespace salvo {

namespace {

// ---------------------------------------------------------------------------
// Minimal structured text format: named [section]s of key = value lines.
// Values are numbers, "quoted strings", or (nested) arrays of numbers.
// '#' starts a comment.
// ---------------------------------------------------------------------------

struct Value {
    enum class Kind { number, text, array };
    Kind kind = Kind::number;
    double number = 0.0;
    std::string text;
    std::vector<Value> items;
};

struct Section {
    std::string name;
    std::vector<std::pair<std::string, Value>> entries;
};

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

Value parse_value(const std::string& text, const std::string& where) {
    const std::string body = trim(text);
    if (body.empty()) {
        throw ValidationError(where + ": empty value");
    }
    Value v;
    if (body.front() == '"') {
        if (body.size() < 2 || body.back() != '"') {
            throw ValidationError(where + ": unterminated string");
        }
        v.kind = Value::Kind::text;
        v.text = body.substr(1, body.size() - 2);
        return v;
    }
    if (body.front() == '[') {
        if (body.back() != ']') {
            throw ValidationError(where + ": unterminated array");
        }
        v.kind = Value::Kind::array;
        const std::string inner = body.substr(1, body.size() - 2);
        int depth = 0;
        std::string item;
        auto flush = [&] {
            if (!trim(item).empty()) {
                v.items.push_back(parse_value(item, where));
            }
            item.clear();
        };
        for (char c : inner) {
            if (c == '[') {
                ++depth;
            }
            if (c == ']') {
                --depth;
            }
            if (c == ',' && depth == 0) {
                flush();
            } else {
                item += c;
            }
        }
        flush();
        return v;
    }
    char* end = nullptr;
    v.number = std::strtod(body.c_str(), &end);
    if (end != body.c_str() + body.size()) {
        throw ValidationError(where + ": cannot parse value \"" + body + "\"");
    }
    v.kind = Value::Kind::number;
    return v;
}

std::vector<Section> parse_sections(std::istream& in, const std::string& origin) {
    std::vector<Section> sections;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(line_no);
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw ValidationError(where + ": malformed section header");
            }
            sections.push_back({trim(body.substr(1, body.size() - 2)), {}});
            continue;
        }
        const size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(where + ": expected key = value");
        }
        if (sections.empty()) {
            throw ValidationError(where + ": key outside any section");
        }
        const std::string key = trim(body.substr(0, eq));
        sections.back().entries.emplace_back(key,
                                             parse_value(body.substr(eq + 1), where + " (" + key + ")"));
    }
    return sections;
}

// Tracks which keys were consumed so typos surface as errors.
class SectionReader {
public:
    SectionReader(const Section* sec, std::string origin, std::string name)
        : sec_(sec), where_(std::move(origin) + ": [" + name + "]"), name_(std::move(name)) {}

    bool present() const { return sec_ != nullptr; }
    const std::string& where() const { return where_; }

    const Value* find(const std::string& key) {
        if (!sec_) {
            return nullptr;
        }
        consumed_.insert(key);
        for (const auto& [k, v] : sec_->entries) {
            if (k == key) {
                return &v;
            }
        }
        return nullptr;
    }

    double number(const std::string& key) {
        const Value* v = require(key);
        if (v->kind != Value::Kind::number) {
            throw ValidationError(where_ + " " + key + ": expected a number");
        }
        return v->number;
    }

    double number_or(const std::string& key, double fallback) {
        const Value* v = find(key);
        if (!v) {
            return fallback;
        }
        if (v->kind != Value::Kind::number) {
            throw ValidationError(where_ + " " + key + ": expected a number");
        }
        return v->number;
    }

    std::string text(const std::string& key) {
        const Value* v = require(key);
        if (v->kind != Value::Kind::text) {
            throw ValidationError(where_ + " " + key + ": expected a quoted string");
        }
        return v->text;
    }

    std::string text_or(const std::string& key, const std::string& fallback) {
        const Value* v = find(key);
        if (!v) {
            return fallback;
        }
        if (v->kind != Value::Kind::text) {
            throw ValidationError(where_ + " " + key + ": expected a quoted string");
        }
        return v->text;
    }

    std::vector<double> numbers(const std::string& key) {
        const Value* v = require(key);
        return to_numbers(*v, key);
    }

    std::optional<std::vector<double>> numbers_opt(const std::string& key) {
        const Value* v = find(key);
        if (!v) {
            return std::nullopt;
        }
        return to_numbers(*v, key);
    }

    std::vector<std::vector<double>> rows(const std::string& key) {
        const Value* v = require(key);
        if (v->kind != Value::Kind::array) {
            throw ValidationError(where_ + " " + key + ": expected an array of arrays");
        }
        std::vector<std::vector<double>> out;
        for (const Value& item : v->items) {
            out.push_back(to_numbers(item, key));
        }
        return out;
    }

    std::optional<double> reference(const std::string& key) {
        const Value* v = find(key);
        if (!v) {
            return std::nullopt;
        }
        if (v->kind != Value::Kind::number) {
            throw ValidationError(where_ + " " + key + ": expected a number");
        }
        return v->number;
    }

    void finish() const {
        if (!sec_) {
            return;
        }
        for (const auto& [k, v] : sec_->entries) {
            if (!consumed_.contains(k)) {
                throw ValidationError(where_ + ": unknown key \"" + k + "\"");
            }
        }
    }

private:
    const Value* require(const std::string& key) {
        const Value* v = find(key);
        if (!v) {
            throw ValidationError(where_ + ": missing key \"" + key + "\"");
        }
        return v;
    }

    std::vector<double> to_numbers(const Value& v, const std::string& key) const {
        if (v.kind != Value::Kind::array) {
            throw ValidationError(where_ + " " + key + ": expected an array of numbers");
        }
        std::vector<double> out;
        for (const Value& item : v.items) {
            if (item.kind != Value::Kind::number) {
                throw ValidationError(where_ + " " + key + ": expected an array of numbers");
            }
            out.push_back(item.number);
        }
        return out;
    }

    const Section* sec_;
    std::string where_;
    std::string name_;
    std::set<std::string> consumed_;
};

CommGraph graph_from_rows(const std::vector<std::vector<double>>& rows, int n,
                          const std::string& where) {
    std::vector<Edge> edges;
    for (const auto& row : rows) {
        if (row.size() != 2 && row.size() != 3) {
            throw ValidationError(where + " edges: each edge needs [i, j] or [i, j, weight]");
        }
        const double fi = row[0];
        const double fj = row[1];
        if (fi != std::floor(fi) || fj != std::floor(fj)) {
            throw ValidationError(where + " edges: agent indices must be integers");
        }
        const int i = static_cast<int>(fi);
        const int j = static_cast<int>(fj);
        if (i < 1 || i > n || j < 1 || j > n) {
            throw ValidationError(where + " edges: agent index out of range (1-based)");
        }
        edges.push_back({i - 1, j - 1, row.size() == 3 ? row[2] : 1.0});
    }
    return CommGraph(n, edges);
}

OddRatio ratio_field(SectionReader& sec, const std::string& key) {
    try {
        return OddRatio::parse(sec.text(key));
    } catch (const ValidationError& err) {
        throw ValidationError(sec.where() + " " + key + ": " + err.what());
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_edges(std::ostream& out, const CommGraph& g) {
    out << "edges = [";
    bool first = true;
    for (const Edge& e : g.edges()) {
        if (!first) {
            out << ", ";
        }
        first = false;
        out << "[" << (e.a + 1) << ", " << (e.b + 1);
        if (e.weight != 1.0) {
            out << ", " << fmt(e.weight);
        }
        out << "]";
    }
    out << "]\n";
}

}  // namespace

bool Scenario::operator==(const Scenario& other) const {
    auto ic_equal = [](const InitialCondition& a, const InitialCondition& b) {
        return a.r0 == b.r0 && a.v0 == b.v0 && a.phi0 == b.phi0;
    };
    if (agents.size() != other.agents.size()) {
        return false;
    }
    for (size_t i = 0; i < agents.size(); ++i) {
        if (!ic_equal(agents[i], other.agents[i])) {
            return false;
        }
    }
    return schedule == other.schedule && guidance == other.guidance && target == other.target &&
           dt == other.dt && t_max == other.t_max && r_stop == other.r_stop &&
           r_floor == other.r_floor && mode == other.mode && settling == other.settling &&
           reference == other.reference;
}

void Scenario::validate() const {
    if (agents.empty()) {
        throw ValidationError("scenario: [agents] must list at least one agent");
    }
    if (static_cast<int>(agents.size()) != schedule.agent_count()) {
        throw ValidationError("scenario: agent count (" + std::to_string(agents.size()) +
                              ") does not match graph size (" +
                              std::to_string(schedule.agent_count()) + ")");
    }
    for (size_t i = 0; i < agents.size(); ++i) {
        if (!(agents[i].r0 > 0.0)) {
            throw ValidationError("scenario: [agents] r0 of agent " + std::to_string(i + 1) +
                                  " must be positive");
        }
        if (!(agents[i].v0 >= 0.0)) {
            throw ValidationError("scenario: [agents] v0 of agent " + std::to_string(i + 1) +
                                  " must be non-negative");
        }
    }
    if (!(target.amplitude >= 0.0) || !(target.frequency >= 0.0)) {
        throw ValidationError("scenario: [target] amplitude and frequency must be non-negative");
    }
    sim_config().validate();
}

SimConfig Scenario::sim_config() const {
    SimConfig cfg;
    cfg.dt = dt;
    cfg.t_max = t_max;
    cfg.r_stop = r_stop;
    cfg.r_floor = r_floor;
    cfg.mode = mode;
    cfg.target = target;
    cfg.schedule = schedule;
    cfg.guidance = guidance;
    cfg.settling = settling;
    return cfg;
}

std::vector<std::string> builtin_scenario_names() {
    return {"paper-sec4", "paper-sec4-maneuvering"};
}

Scenario builtin_scenario(const std::string& name) {
    // Five-vehicle reference engagement: initial states and gains from the
    // published benchmark this project reproduces. The communication graph is
    // a unit-weight five-ring (the benchmark leaves the topology open).
    Scenario s;
    s.agents = {
        {16000.0, 350.0, -0.09},
        {15050.0, 320.0, 0.10},
        {13990.0, 270.0, 0.11},
        {13950.0, 300.0, -0.15},
        {15000.0, 331.0, 0.12},
    };
    s.schedule = TopologySchedule::fixed(
        CommGraph(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
    s.guidance.k1 = 0.265;
    s.guidance.k2 = 2.0;
    s.guidance.k3 = 0.25;
    s.guidance.k4 = 2.0;
    s.guidance.reach_super = OddRatio(13, 11);
    s.guidance.reach_sub = OddRatio(5, 7);
    s.guidance.transverse_super = OddRatio(7, 5);
    s.guidance.transverse_sub = OddRatio(3, 5);
    s.guidance.eta1 = 1.5;
    s.guidance.epsilon = 1.5;
    s.guidance.omega = 0.5;
    s.guidance.surface.alpha1 = 0.25;
    s.guidance.surface.alpha2 = 2.0;
    s.guidance.surface.exp_super = OddRatio(11, 9);
    s.guidance.surface.exp_sub = OddRatio(5, 7);
    s.guidance.surface.mu = 0.001;
    s.target.kind = TargetModel::Kind::stationary;

    if (name == "paper-sec4") {
        s.reference.arrival = 51.0;
        s.reference.settle_xi_r = 19.9;
        s.reference.settle_xi_vr = 21.2;
        s.reference.settle_heading = 2.8;
        s.reference.consensus_bound = 48.21;
        s.reference.transverse_bound = 14.9;
        return s;
    }
    if (name == "paper-sec4-maneuvering") {
        s.target.kind = TargetModel::Kind::sinusoidal;
        s.target.amplitude = 3.5;
        s.target.frequency = 0.5;
        s.target.phase = 7.0 * std::numbers::pi / 6.0;
        s.target.position = {{15000.0, 15000.0}};
        s.target.velocity = {{100.0, 100.0}};
        return s;
    }
    throw ValidationError("unknown built-in scenario \"" + name + "\"");
}

Scenario parse_scenario(std::istream& in, const std::string& origin) {
    const std::vector<Section> sections = parse_sections(in, origin);
    std::set<std::string> known{"agents", "graph", "surface", "guidance",
                                "target", "sim",   "settling", "reference"};
    std::vector<const Section*> schedule_sections;
    std::map<std::string, const Section*> by_name;
    for (const Section& sec : sections) {
        if (sec.name.rfind("schedule.", 0) == 0) {
            schedule_sections.push_back(&sec);
            continue;
        }
        if (!known.contains(sec.name)) {
            throw ValidationError(origin + ": unknown section [" + sec.name + "]");
        }
        if (by_name.contains(sec.name)) {
            throw ValidationError(origin + ": duplicate section [" + sec.name + "]");
        }
        by_name[sec.name] = &sec;
    }
    auto reader = [&](const std::string& name) {
        auto it = by_name.find(name);
        return SectionReader(it == by_name.end() ? nullptr : it->second, origin, name);
    };

    Scenario s;

    SectionReader agents = reader("agents");
    if (!agents.present()) {
        throw ValidationError(origin + ": missing [agents] section");
    }
    const std::vector<double> r0 = agents.numbers("r0");
    const std::vector<double> v0 = agents.numbers("v0");
    const std::vector<double> phi0 = agents.numbers("phi0");
    if (r0.size() != v0.size() || r0.size() != phi0.size()) {
        throw ValidationError(agents.where() + ": r0, v0, phi0 must have equal lengths");
    }
    const int n = static_cast<int>(r0.size());
    for (int i = 0; i < n; ++i) {
        s.agents.push_back({r0[i], v0[i], phi0[i]});
    }
    agents.finish();

    SectionReader graph = reader("graph");
    if (graph.present() == !schedule_sections.empty()) {
        throw ValidationError(origin + ": provide exactly one of [graph] or [schedule.N]");
    }
    if (graph.present()) {
        s.schedule = TopologySchedule::fixed(graph_from_rows(graph.rows("edges"), n, graph.where()));
        graph.finish();
    } else {
        std::vector<TopologySchedule::Segment> segments;
        for (const Section* sec : schedule_sections) {
            SectionReader seg(sec, origin, sec->name);
            const double t_start = seg.number("t_start");
            segments.push_back({t_start, graph_from_rows(seg.rows("edges"), n, seg.where())});
            seg.finish();
        }
        s.schedule = TopologySchedule(std::move(segments));
    }

    SectionReader surface = reader("surface");
    if (surface.present()) {
        s.guidance.surface.alpha1 = surface.number("alpha1");
        s.guidance.surface.alpha2 = surface.number("alpha2");
        s.guidance.surface.exp_super = ratio_field(surface, "exp_super");
        s.guidance.surface.exp_sub = ratio_field(surface, "exp_sub");
        s.guidance.surface.mu = surface.number("mu");
        surface.finish();
    }

    SectionReader guidance = reader("guidance");
    if (guidance.present()) {
        s.guidance.k1 = guidance.number("k1");
        s.guidance.k2 = guidance.number("k2");
        s.guidance.k3 = guidance.number("k3");
        s.guidance.k4 = guidance.number("k4");
        s.guidance.reach_super = ratio_field(guidance, "reach_exp_super");
        s.guidance.reach_sub = ratio_field(guidance, "reach_exp_sub");
        s.guidance.transverse_super = ratio_field(guidance, "transverse_exp_super");
        s.guidance.transverse_sub = ratio_field(guidance, "transverse_exp_sub");
        s.guidance.eta1 = guidance.number("eta1");
        s.guidance.epsilon = guidance.number("epsilon");
        s.guidance.omega = guidance.number("omega");
        guidance.finish();
    }

    SectionReader target = reader("target");
    if (target.present()) {
        const std::string kind = target.text("kind");
        if (kind == "stationary") {
            s.target.kind = TargetModel::Kind::stationary;
        } else if (kind == "sinusoidal") {
            s.target.kind = TargetModel::Kind::sinusoidal;
        } else {
            throw ValidationError(target.where() +
                                  " kind: expected \"stationary\" or \"sinusoidal\"");
        }
        s.target.amplitude = target.number_or("amplitude", 0.0);
        s.target.frequency = target.number_or("frequency", 0.0);
        s.target.phase = target.number_or("phase", 0.0);
        if (auto pos = target.numbers_opt("position")) {
            if (pos->size() != 2) {
                throw ValidationError(target.where() + " position: expected [x, y]");
            }
            s.target.position = {{(*pos)[0], (*pos)[1]}};
        }
        if (auto vel = target.numbers_opt("velocity")) {
            if (vel->size() != 2) {
                throw ValidationError(target.where() + " velocity: expected [vx, vy]");
            }
            s.target.velocity = {{(*vel)[0], (*vel)[1]}};
        }
        target.finish();
    }

    SectionReader sim = reader("sim");
    if (sim.present()) {
        s.dt = sim.number_or("dt", s.dt);
        s.t_max = sim.number_or("t_max", s.t_max);
        s.r_stop = sim.number_or("r_stop", s.r_stop);
        s.r_floor = sim.number_or("r_floor", s.r_floor);
        const std::string mode = sim.text_or("mode", "delayed");
        if (mode == "delayed") {
            s.mode = ControlResolutionMode::delayed;
        } else if (mode == "fixed-point") {
            s.mode = ControlResolutionMode::fixed_point;
        } else {
            throw ValidationError(sim.where() +
                                  " mode: expected \"delayed\" or \"fixed-point\"");
        }
        sim.finish();
    }

    SectionReader settling = reader("settling");
    if (settling.present()) {
        s.settling.xi_r = settling.number_or("xi_r", s.settling.xi_r);
        s.settling.xi_vr = settling.number_or("xi_vr", s.settling.xi_vr);
        s.settling.heading = settling.number_or("heading", s.settling.heading);
        settling.finish();
    }

    SectionReader reference = reader("reference");
    if (reference.present()) {
        s.reference.arrival = reference.reference("arrival");
        s.reference.settle_xi_r = reference.reference("settle_xi_r");
        s.reference.settle_xi_vr = reference.reference("settle_xi_vr");
        s.reference.settle_heading = reference.reference("settle_heading");
        s.reference.consensus_bound = reference.reference("consensus_bound");
        s.reference.transverse_bound = reference.reference("transverse_bound");
        reference.finish();
    }

    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path_or_name) {
    const auto names = builtin_scenario_names();
    if (std::find(names.begin(), names.end(), path_or_name) != names.end()) {
        return builtin_scenario(path_or_name);
    }
    std::ifstream in(path_or_name);
    if (!in) {
        throw ValidationError("cannot open scenario file \"" + path_or_name +
                              "\" (and it is not a built-in scenario name)");
    }
    return parse_scenario(in, path_or_name);
}

void save_scenario(const Scenario& s, std::ostream& out) {
    out << "[agents]\n";
    auto write_list = [&](const char* key, auto&& get) {
        out << key << " = [";
        for (size_t i = 0; i < s.agents.size(); ++i) {
            out << (i ? ", " : "") << fmt(get(s.agents[i]));
        }
        out << "]\n";
    };
    write_list("r0", [](const InitialCondition& ic) { return ic.r0; });
    write_list("v0", [](const InitialCondition& ic) { return ic.v0; });
    write_list("phi0", [](const InitialCondition& ic) { return ic.phi0; });
    out << "\n";

    if (s.schedule.segments().size() == 1) {
        out << "[graph]\n";
        write_edges(out, s.schedule.segments().front().graph);
    } else {
        for (size_t k = 0; k < s.schedule.segments().size(); ++k) {
            const auto& seg = s.schedule.segments()[k];
            out << "[schedule." << k << "]\n";
            out << "t_start = " << fmt(seg.t_start) << "\n";
            write_edges(out, seg.graph);
        }
    }
    out << "\n[surface]\n";
    out << "alpha1 = " << fmt(s.guidance.surface.alpha1) << "\n";
    out << "alpha2 = " << fmt(s.guidance.surface.alpha2) << "\n";
    out << "exp_super = \"" << s.guidance.surface.exp_super.str() << "\"\n";
    out << "exp_sub = \"" << s.guidance.surface.exp_sub.str() << "\"\n";
    out << "mu = " << fmt(s.guidance.surface.mu) << "\n";

    out << "\n[guidance]\n";
    out << "k1 = " << fmt(s.guidance.k1) << "\n";
    out << "k2 = " << fmt(s.guidance.k2) << "\n";
    out << "k3 = " << fmt(s.guidance.k3) << "\n";
    out << "k4 = " << fmt(s.guidance.k4) << "\n";
    out << "reach_exp_super = \"" << s.guidance.reach_super.str() << "\"\n";
    out << "reach_exp_sub = \"" << s.guidance.reach_sub.str() << "\"\n";
    out << "transverse_exp_super = \"" << s.guidance.transverse_super.str() << "\"\n";
    out << "transverse_exp_sub = \"" << s.guidance.transverse_sub.str() << "\"\n";
    out << "eta1 = " << fmt(s.guidance.eta1) << "\n";
    out << "epsilon = " << fmt(s.guidance.epsilon) << "\n";
    out << "omega = " << fmt(s.guidance.omega) << "\n";

    out << "\n[target]\n";
    out << "kind = \""
        << (s.target.kind == TargetModel::Kind::stationary ? "stationary" : "sinusoidal")
        << "\"\n";
    if (s.target.kind == TargetModel::Kind::sinusoidal) {
        out << "amplitude = " << fmt(s.target.amplitude) << "\n";
        out << "frequency = " << fmt(s.target.frequency) << "\n";
        out << "phase = " << fmt(s.target.phase) << "\n";
    }
    if (s.target.position) {
        out << "position = [" << fmt((*s.target.position)[0]) << ", "
            << fmt((*s.target.position)[1]) << "]\n";
    }
    if (s.target.velocity) {
        out << "velocity = [" << fmt((*s.target.velocity)[0]) << ", "
            << fmt((*s.target.velocity)[1]) << "]\n";
    }

    out << "\n[sim]\n";
    out << "dt = " << fmt(s.dt) << "\n";
    out << "t_max = " << fmt(s.t_max) << "\n";
    out << "r_stop = " << fmt(s.r_stop) << "\n";
    out << "r_floor = " << fmt(s.r_floor) << "\n";
    out << "mode = \"" << (s.mode == ControlResolutionMode::delayed ? "delayed" : "fixed-point")
        << "\"\n";

    out << "\n[settling]\n";
    out << "xi_r = " << fmt(s.settling.xi_r) << "\n";
    out << "xi_vr = " << fmt(s.settling.xi_vr) << "\n";
    out << "heading = " << fmt(s.settling.heading) << "\n";

    const ReferenceValues& ref = s.reference;
    if (ref.arrival || ref.settle_xi_r || ref.settle_xi_vr || ref.settle_heading ||
        ref.consensus_bound || ref.transverse_bound) {
        out << "\n[reference]\n";
        auto maybe = [&](const char* key, const std::optional<double>& v) {
            if (v) {
                out << key << " = " << fmt(*v) << "\n";
            }
        };
        maybe("arrival", ref.arrival);
        maybe("settle_xi_r", ref.settle_xi_r);
        maybe("settle_xi_vr", ref.settle_xi_vr);
        maybe("settle_heading", ref.settle_heading);
        maybe("consensus_bound", ref.consensus_bound);
        maybe("transverse_bound", ref.transverse_bound);
    }
}

void drop_edge(Scenario& s, int i, int j, double t) {
    const int n = s.schedule.agent_count();
    if (i < 1 || j < 1 || i > n || j > n) {
        throw ValidationError("drop-edge: agent index out of range");
    }
    const int a = i - 1;
    const int b = j - 1;
    const CommGraph& current = graph_at(s.schedule, t);
    if (current.weight(a, b) == 0.0) {
        throw ValidationError("drop-edge: no edge between agents " + std::to_string(i) + " and " +
                              std::to_string(j) + " at t = " + fmt(t));
    }
    auto without_edge = [&](const CommGraph& g) {
        std::vector<double> adj = g.adjacency();
        adj[static_cast<size_t>(a) * g.size() + b] = 0.0;
        adj[static_cast<size_t>(b) * g.size() + a] = 0.0;
        return CommGraph(g.size(), std::move(adj));
    };
    std::vector<TopologySchedule::Segment> segments;
    bool inserted = false;
    for (const auto& seg : s.schedule.segments()) {
        if (seg.t_start < t) {
            segments.push_back(seg);
        } else {
            if (!inserted && seg.t_start > t) {
                segments.push_back({t, without_edge(current)});
                inserted = true;
            }
            if (seg.t_start == t) {
                inserted = true;
            }
            segments.push_back({seg.t_start, without_edge(seg.graph)});
        }
    }
    if (!inserted) {
        segments.push_back({t, without_edge(current)});
    }
    s.schedule = TopologySchedule(std::move(segments));  // re-validates connectivity
}

}  // namespace salvo
