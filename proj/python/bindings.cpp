#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "apfgrid/io.hpp"
#include "apfgrid/sim.hpp"
#include "apfgrid/symmetry.hpp"
#include "apfgrid/verify.hpp"

namespace py = pybind11;
using namespace apfgrid;

namespace {

using Point = std::pair<int, int>;

std::vector<GridPoint> to_points(const std::vector<Point>& ps) {
    std::vector<GridPoint> out;
    out.reserve(ps.size());
    for (auto [x, y] : ps) out.push_back({x, y});
    return out;
}

std::vector<Point> from_points(const std::vector<GridPoint>& ps) {
    std::vector<Point> out;
    out.reserve(ps.size());
    for (auto p : ps) out.emplace_back(p.x, p.y);
    return out;
}

Instance make_instance(const std::vector<Point>& robots, const std::vector<Point>& targets) {
    return Instance{to_points(robots), to_points(targets)};
}

py::dict instance_dict(const Instance& inst) {
    py::dict d;
    d["robots"] = from_points(inst.robots);
    d["targets"] = from_points(inst.targets);
    return d;
}

py::dict result_dict(const Instance& inst, const SchedulerPolicy& policy, const RunResult& r) {
    py::dict d;
    d["verdict"] = std::string(to_string(r.verdict));
    d["ticks"] = r.ticks;
    py::list violations;
    for (const auto& v : r.violations) {
        py::dict e;
        e["kind"] = std::string(to_string(v.kind));
        e["tick"] = v.tick;
        e["details"] = v.details;
        violations.append(e);
    }
    d["violations"] = violations;
    d["head_moves"] = r.metrics.head_moves;
    d["tail_moves"] = r.metrics.tail_moves;
    d["inner_moves_max"] = r.metrics.max_inner_moves;
    d["total_moves"] = r.metrics.total_moves;
    d["epochs"] = r.metrics.epochs;
    if (r.metrics.visited) {
        d["visited"] = py::make_tuple(r.metrics.visited->width(), r.metrics.visited->height());
    } else {
        d["visited"] = py::none();
    }
    d["D"] = r.dims.D;
    d["M"] = r.dims.M;
    d["N"] = r.dims.N;
    d["bounds_ok"] = r.bounds.pass();
    d["bound_failures"] = r.bounds.failures;
    d["final"] = from_points(r.final_config.node_positions());
    d["trace"] = write_trace(Trace{{policy.seed, policy.describe(), instance_hash(inst)}, r.trace});
    d["report"] = report_line(inst, policy, r);
    return d;
}

py::dict run(const std::vector<Point>& robots, const std::vector<Point>& targets, const std::string& scheduler,
             std::uint64_t seed, bool strict_frames, std::int64_t max_ticks) {
    const Instance inst = make_instance(robots, targets);
    const auto kind = parse_scheduler(scheduler);
    if (!kind) throw py::value_error("unknown scheduler '" + scheduler + "'");
    validate_instance(inst);
    SchedulerPolicy policy;
    policy.kind = *kind;
    policy.seed = seed;
    RunLimits limits;
    limits.max_ticks = max_ticks;
    RunResult r;
    {
        py::gil_scoped_release release;
        r = run_simulation(inst, policy, limits, strict_frames);
    }
    return result_dict(inst, policy, r);
}

py::dict verify(const std::string& trace_text, const std::vector<Point>& robots, const std::vector<Point>& targets) {
    const Instance inst = make_instance(robots, targets);
    validate_instance(inst);
    const Trace t = read_trace(trace_text);
    if (t.header.instance != instance_hash(inst)) {
        throw py::value_error("trace is for instance " + t.header.instance + ", not " + instance_hash(inst));
    }
    SchedulerPolicy policy;
    policy.seed = t.header.seed;
    if (auto k = parse_scheduler(t.header.policy.substr(0, t.header.policy.find(' ')))) policy.kind = *k;
    return result_dict(inst, policy, replay_trace(inst, t.events));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Arbitrary pattern formation on the grid with luminous robots";

    m.def("parse_instance", [](const std::string& text) { return instance_dict(parse_instance(text)); },
          py::arg("text"), "Parse instance text into {'robots': [...], 'targets': [...]}.");
    m.def("write_instance",
          [](const std::vector<Point>& r, const std::vector<Point>& t) { return write_instance(make_instance(r, t)); },
          py::arg("robots"), py::arg("targets"));
    m.def("instance_hash",
          [](const std::vector<Point>& r, const std::vector<Point>& t) { return instance_hash(make_instance(r, t)); },
          py::arg("robots"), py::arg("targets"));
    m.def(
        "generate",
        [](std::uint64_t seed, int k, int init_w, int init_h, int tgt_w, int tgt_h) {
            return instance_dict(generate_instance(seed, GenParams{k, init_w, init_h, tgt_w, tgt_h}));
        },
        py::arg("seed"), py::arg("k"), py::arg("init_w") = 3, py::arg("init_h") = 3, py::arg("tgt_w") = 3,
        py::arg("tgt_h") = 3);
    m.def(
        "generate_random",
        [](std::uint64_t seed, int k_min, int k_max, int max_box) {
            return instance_dict(generate_random_instance(seed, k_min, k_max, max_box));
        },
        py::arg("seed"), py::arg("k_min") = 3, py::arg("k_max") = 12, py::arg("max_box") = 8);
    m.def("is_asymmetric", [](const std::vector<Point>& ps) { return is_asymmetric(to_points(ps)); },
          py::arg("points"));
    m.def("automorphism_count",
          [](const std::vector<Point>& ps) { return automorphism_oracle(to_points(ps)).size(); }, py::arg("points"),
          "Number of non-trivial symmetries found by brute force.");
    m.def(
        "patterns_equivalent",
        [](const std::vector<Point>& a, const std::vector<Point>& b) {
            return patterns_equivalent(to_points(a), to_points(b));
        },
        py::arg("points"), py::arg("pattern"));
    m.def("run", &run, py::arg("robots"), py::arg("targets"), py::arg("scheduler") = "async", py::arg("seed") = 0,
          py::arg("strict_frames") = false, py::arg("max_ticks") = 200000,
          "Simulate one run and return verdict, metrics, violations, trace text and report line.");
    m.def("verify", &verify, py::arg("trace"), py::arg("robots"), py::arg("targets"),
          "Replay trace text through the monitor.");
}
