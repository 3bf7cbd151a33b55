#include "apfgrid/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <random>
#include <sstream>

#include "apfgrid/symmetry.hpp"

namespace apfgrid {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <class T>
std::optional<T> parse_int(std::string_view s) {
    T v{};
    if (s.empty()) return std::nullopt;
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) return std::nullopt;
    return v;
}

std::optional<GridPoint> parse_pair(std::string_view s, char sep) {
    const auto parts = split(s, sep);
    if (parts.size() != 2) return std::nullopt;
    const auto x = parse_int<int>(parts[0]);
    const auto y = parse_int<int>(parts[1]);
    if (!x || !y) return std::nullopt;
    return GridPoint{*x, *y};
}

std::string coord(GridPoint p) { return std::to_string(p.x) + ":" + std::to_string(p.y); }

std::vector<std::string_view> lines_of(std::string_view text) {
    auto lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

}  // namespace

Instance parse_instance(std::string_view text) {
    enum class Section { None, Robots, Targets } section = Section::None;
    Instance inst;
    std::vector<int> robot_lines;
    int target_header = 0;
    int line_no = 0;
    for (std::string_view line : lines_of(text)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') throw ParseError(line_no, "CR line ending");
        if (line.empty() || line.front() == '#') continue;
        if (line == "robots:") {
            if (section != Section::None) throw ParseError(line_no, "duplicate robots section");
            section = Section::Robots;
            continue;
        }
        if (line == "targets:") {
            if (section != Section::Robots) throw ParseError(line_no, "targets before robots");
            section = Section::Targets;
            target_header = line_no;
            continue;
        }
        if (section == Section::None) throw ParseError(line_no, "expected 'robots:'");
        const auto p = parse_pair(line, ' ');
        if (!p) throw ParseError(line_no, "expected two integers 'x y'");
        if (section == Section::Robots) {
            const auto dup = std::find(inst.robots.begin(), inst.robots.end(), *p);
            if (dup != inst.robots.end()) throw ParseError(line_no, "multiplicity");
            inst.robots.push_back(*p);
            robot_lines.push_back(line_no);
        } else {
            if (std::find(inst.targets.begin(), inst.targets.end(), *p) != inst.targets.end()) {
                throw ParseError(line_no, "duplicate target");
            }
            inst.targets.push_back(*p);
        }
    }
    if (section != Section::Targets) throw ParseError(line_no + 1, "missing 'targets:' section");
    if (inst.robots.empty()) throw ParseError(target_header, "no robots");
    if (inst.robots.size() != inst.targets.size()) {
        throw ParseError(target_header, "cardinality: " + std::to_string(inst.robots.size()) +
                                            " robots, " + std::to_string(inst.targets.size()) +
                                            " targets");
    }
    if (inst.robots.size() >= 2 && !is_asymmetric(inst.robots)) {
        throw ParseError(robot_lines.front(), "symmetric initial configuration");
    }
    return inst;
}

std::string write_instance(const Instance& instance) {
    std::string out = "robots:\n";
    for (const auto& p : instance.robots) out += std::to_string(p.x) + " " + std::to_string(p.y) + "\n";
    out += "targets:\n";
    for (const auto& p : instance.targets) out += std::to_string(p.x) + " " + std::to_string(p.y) + "\n";
    return out;
}

std::string instance_hash(const Instance& instance) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : write_instance(instance)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Instance generate_instance(std::uint64_t seed, const GenParams& params) {
    const int k = params.k;
    if (k < 1) throw InvalidInstance("robot count must be positive");
    if (k == 2) throw InvalidInstance("two robots are always symmetric");
    if (params.max_init_w < 1 || params.max_init_h < 1 || params.max_tgt_w < 1 || params.max_tgt_h < 1) {
        throw InvalidInstance("boxes must be at least 1x1");
    }
    if (k > params.max_init_w * params.max_init_h || k > params.max_tgt_w * params.max_tgt_h) {
        throw InvalidInstance("box too small for the robot count");
    }
    std::mt19937_64 rng(seed);
    auto sample = [&](int w, int h) {
        std::vector<GridPoint> nodes;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) nodes.push_back({x, y});
        }
        // Partial Fisher-Yates with explicit draws so results do not depend on
        // the standard library's shuffle.
        for (int i = 0; i < k; ++i) {
            const auto j = static_cast<std::size_t>(i) +
                           static_cast<std::size_t>(rng() % (nodes.size() - static_cast<std::size_t>(i)));
            std::swap(nodes[static_cast<std::size_t>(i)], nodes[j]);
        }
        nodes.resize(static_cast<std::size_t>(k));
        return nodes;
    };
    constexpr int kAttempts = 10000;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        auto robots = sample(params.max_init_w, params.max_init_h);
        if (k >= 2 && !is_asymmetric(robots)) continue;
        Instance inst;
        inst.robots = std::move(robots);
        inst.targets = sample(params.max_tgt_w, params.max_tgt_h);
        return inst;
    }
    throw InvalidInstance("no asymmetric placement found in the given box");
}

Instance generate_random_instance(std::uint64_t seed, int k_min, int k_max, int max_box) {
    if (k_min < 1 || k_max < k_min || max_box < 1) throw InvalidInstance("bad generator ranges");
    std::mt19937_64 rng(seed);
    auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    for (int attempt = 0; attempt < 1000; ++attempt) {
        int k = draw(k_min, k_max);
        if (k == 2) k = 3;
        GenParams p{k, draw(1, max_box), draw(1, max_box), draw(1, max_box), draw(1, max_box)};
        if (p.max_init_w * p.max_init_h <= k || p.max_tgt_w * p.max_tgt_h < k) continue;
        try {
            return generate_instance(rng(), p);
        } catch (const InvalidInstance&) {
        }
    }
    throw InvalidInstance("generator ranges admit no asymmetric instance");
}

std::string format_event(const SimEvent& e) {
    std::vector<std::string> kv;
    if (e.pos) kv.push_back("pos=" + coord(*e.pos));
    if (e.frame) kv.push_back("frame=" + std::to_string(*e.frame));
    if (e.kind == EventKind::ComputeEnd) {
        kv.push_back("color=" + std::string(to_string(e.color.value_or(LightColor::Off))));
        kv.push_back("step=" + (e.step ? to_string(*e.step) : std::string("none")));
    }
    if (e.from) kv.push_back("from=" + coord(*e.from));
    if (e.to) kv.push_back("to=" + coord(*e.to));
    std::string payload;
    for (std::size_t i = 0; i < kv.size(); ++i) payload += (i ? "," : "") + kv[i];
    return std::to_string(e.tick) + "\t" + std::string(to_string(e.kind)) + "\t" +
           std::to_string(e.robot) + "\t" + payload;
}

SimEvent parse_event(std::string_view line, int line_no) {
    const auto cols = split(line, '\t');
    if (cols.size() != 4) throw ParseError(line_no, "expected 4 tab-separated fields");
    SimEvent e;
    const auto tick = parse_int<std::int64_t>(cols[0]);
    const auto kind = parse_event_kind(cols[1]);
    const auto robot = parse_int<int>(cols[2]);
    if (!tick || !kind || !robot) throw ParseError(line_no, "bad tick, kind or robot id");
    e.tick = *tick;
    e.kind = *kind;
    e.robot = *robot;
    if (cols[3].empty()) return e;
    for (std::string_view item : split(cols[3], ',')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "payload item without '='");
        const auto key = item.substr(0, eq);
        const auto val = item.substr(eq + 1);
        bool ok = true;
        if (key == "pos" || key == "from" || key == "to") {
            const auto p = parse_pair(val, ':');
            ok = p.has_value();
            if (ok) (key == "pos" ? e.pos : key == "from" ? e.from : e.to) = *p;
        } else if (key == "frame") {
            e.frame = parse_int<int>(val);
            ok = e.frame.has_value();
        } else if (key == "color") {
            e.color = parse_color(val);
            ok = e.color.has_value();
        } else if (key == "step") {
            if (val != "none") {
                e.step = parse_direction(val);
                ok = e.step.has_value();
            }
        } else {
            ok = false;
        }
        if (!ok) throw ParseError(line_no, "bad payload item '" + std::string(item) + "'");
    }
    return e;
}

std::string write_trace(const Trace& trace) {
    std::string out = "#apf-trace v1\n";
    out += "#seed " + std::to_string(trace.header.seed) + "\n";
    out += "#policy " + trace.header.policy + "\n";
    out += "#instance " + trace.header.instance + "\n";
    for (const auto& e : trace.events) out += format_event(e) + "\n";
    return out;
}

Trace read_trace(std::string_view text) {
    Trace t;
    int line_no = 0;
    bool saw_magic = false;
    for (std::string_view line : lines_of(text)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (line == "#apf-trace v1") {
                saw_magic = true;
            } else if (line.starts_with("#seed ")) {
                const auto s = parse_int<std::uint64_t>(line.substr(6));
                if (!s) throw ParseError(line_no, "bad seed");
                t.header.seed = *s;
            } else if (line.starts_with("#policy ")) {
                t.header.policy = std::string(line.substr(8));
            } else if (line.starts_with("#instance ")) {
                t.header.instance = std::string(line.substr(10));
            } else {
                throw ParseError(line_no, "unknown header line");
            }
            continue;
        }
        if (!saw_magic) throw ParseError(line_no, "missing '#apf-trace v1' header");
        t.events.push_back(parse_event(line, line_no));
    }
    if (!saw_magic) throw ParseError(1, "missing '#apf-trace v1' header");
    return t;
}

std::string report_line(const Instance& instance, const SchedulerPolicy& policy,
                        const RunResult& r) {
    const auto& m = r.metrics;
    const auto& d = r.dims;
    std::ostringstream os;
    os << "instance=" << instance_hash(instance) << "\tseed=" << policy.seed
       << "\tscheduler=" << to_string(policy.kind) << "\tverdict=" << to_string(r.verdict)
       << "\tk=" << d.k << "\tD=" << d.D << "\tM=" << d.M << "\tN=" << d.N << "\tvisited="
       << (m.visited ? std::to_string(m.visited->width()) + "x" + std::to_string(m.visited->height())
                     : std::string("0x0"))
       << "\thead_moves=" << m.head_moves << "\ttail_moves=" << m.tail_moves
       << "\tinner_moves_max=" << m.max_inner_moves << "\ttotal_moves=" << m.total_moves
       << "\tepochs=" << m.epochs << "\tticks=" << r.ticks
       << "\ttail_within_2d=" << (r.bounds.tail_within_2d ? 1 : 0)
       << "\tviolations=" << r.violations.size();
    return os.str();
}

std::string ascii_dump(const Configuration& world) {
    if (world.robots().empty()) return "\n";
    std::vector<GridPoint> pts;
    for (const auto& r : world.robots()) {
        const auto [a, b] = r.placement.endpoints();
        pts.push_back(a);
        pts.push_back(b);
    }
    const BoundingRect rect = compute_ser(pts);
    const int w = rect.width();
    std::vector<std::string> rows(static_cast<std::size_t>(rect.height()), std::string(static_cast<std::size_t>(w), '.'));
    auto put = [&](GridPoint p, char c) {
        rows[static_cast<std::size_t>(p.y - rect.min_corner.y)][static_cast<std::size_t>(p.x - rect.min_corner.x)] = c;
    };
    for (const auto& r : world.robots()) {
        if (r.placement.is_on_edge()) {
            const auto [a, b] = r.placement.endpoints();
            put(a, a.y == b.y ? '-' : '|');
            continue;
        }
        put(r.placement.node(), r.color == LightColor::Off ? 'o' : r.color == LightColor::Head ? 'H' : 'T');
    }
    std::string out;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) out += *it + "\n";
    return out;
}

}  // namespace apfgrid
