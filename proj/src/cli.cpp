#include "apfgrid/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "apfgrid/io.hpp"

namespace apfgrid {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInstance("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInstance("cannot write " + path);
    out << text;
}

void append_line(const std::string& path, const std::string& line) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw InvalidInstance("cannot write " + path);
    out << line << '\n';
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::Formed: return kExitOk;
        case Verdict::Violation: return kExitViolation;
        case Verdict::Timeout: return kExitTimeout;
    }
    return kExitTimeout;
}

void print_violations(const RunResult& res, std::ostream& out) {
    for (const auto& v : res.violations) {
        out << "violation " << to_string(v.kind) << " tick=" << v.tick << " " << v.details << '\n';
    }
}

void dump_ticks(const Instance& instance, const std::vector<SimEvent>& trace, std::ostream& out) {
    Monitor mon(instance.robots, instance.targets, MonitorOptions{0, false});
    out << "tick -\n" << ascii_dump(mon.world());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        mon.observe(trace[i]);
        if (i + 1 == trace.size() || trace[i + 1].tick != trace[i].tick) {
            out << "tick " << trace[i].tick << '\n' << ascii_dump(mon.world());
        }
    }
}

SchedulerKind scheduler_from(const std::string& name) {
    const auto kind = parse_scheduler(name);
    if (!kind) throw InvalidInstance("unknown scheduler " + name);
    return *kind;
}

struct BatchStats {
    int runs = 0, formed = 0, violations = 0, timeouts = 0;
    int space_ok = 0, tail_2d = 0;
    double head_per_d = 0, inner_per_d = 0, tail_per_d = 0, total_ratio = 0;

    void add(const RunResult& r) {
        ++runs;
        if (r.verdict == Verdict::Formed) ++formed;
        if (r.verdict == Verdict::Violation) ++violations;
        if (r.verdict == Verdict::Timeout) ++timeouts;
        if (r.verdict != Verdict::Formed) return;
        if (r.bounds.space_ok) ++space_ok;
        if (r.bounds.tail_within_2d) ++tail_2d;
        const double d = r.dims.D;
        head_per_d = std::max(head_per_d, r.metrics.head_moves / d);
        inner_per_d = std::max(inner_per_d, r.metrics.max_inner_moves / d);
        tail_per_d = std::max(tail_per_d, r.metrics.tail_moves / d);
        total_ratio = std::max(total_ratio, r.metrics.total_moves / (3 * d * r.dims.k + 6 * d));
    }

    void print(std::ostream& out) const {
        out << std::fixed << std::setprecision(3) << "runs=" << runs << " formed=" << formed
            << " violations=" << violations << " timeouts=" << timeouts << '\n'
            << "space_within_MxN=" << space_ok << "/" << formed << " tail_within_2D=" << tail_2d << "/"
            << formed << '\n'
            << "max head/D=" << head_per_d << " max inner/D=" << inner_per_d
            << " max tail/D=" << tail_per_d << " max total/(3Dk+6D)=" << total_ratio << '\n';
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pattern formation on the square grid with luminous robots", "apfgrid-cli"};
    app.require_subcommand(1);

    std::uint64_t gen_seed = 0;
    GenParams gen_params;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a random asymmetric instance");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--k", gen_params.k, "Number of robots");
    gen->add_option("--init-w", gen_params.max_init_w, "Initial box width");
    gen->add_option("--init-h", gen_params.max_init_h, "Initial box height");
    gen->add_option("--tgt-w", gen_params.max_tgt_w, "Target box width");
    gen->add_option("--tgt-h", gen_params.max_tgt_h, "Target box height");
    gen->add_option("--out", gen_out, "Output file (default stdout)");

    std::string run_instance, run_scheduler = "async", run_trace, run_report;
    std::uint64_t run_seed = 0;
    std::int64_t run_max_ticks = RunLimits{}.max_ticks;
    bool run_strict = false, run_dump = false;
    auto* run = app.add_subcommand("run", "Simulate one instance");
    run->add_option("--instance", run_instance, "Instance file")->required();
    run->add_option("--scheduler", run_scheduler, "fsync, ssync or async")
        ->check(CLI::IsMember({"fsync", "ssync", "async"}));
    run->add_option("--seed", run_seed, "Scheduler seed");
    run->add_option("--max-ticks", run_max_ticks, "Tick limit");
    run->add_option("--trace", run_trace, "Write the trace here");
    run->add_flag("--strict-frames", run_strict, "Give each Look a random local frame");
    run->add_option("--report", run_report, "Append a report line here");
    run->add_flag("--dump-ascii", run_dump, "Print the grid after every tick");

    int batch_count = 100, batch_seeds = 1, batch_kmin = 3, batch_kmax = 12, batch_box = 8;
    std::string batch_scheduler = "async", batch_report;
    std::uint64_t batch_seed = 0;
    bool batch_strict = false;
    std::int64_t batch_max_ticks = RunLimits{}.max_ticks;
    auto* batch = app.add_subcommand("batch", "Simulate generated instances and summarise");
    batch->add_option("--count", batch_count, "Number of instances")->check(CLI::PositiveNumber);
    batch->add_option("--seeds", batch_seeds, "Scheduler seeds per instance")->check(CLI::PositiveNumber);
    batch->add_option("--scheduler", batch_scheduler, "fsync, ssync or async")
        ->check(CLI::IsMember({"fsync", "ssync", "async"}));
    batch->add_option("--seed", batch_seed, "Base seed");
    batch->add_option("--k-min", batch_kmin, "Fewest robots");
    batch->add_option("--k-max", batch_kmax, "Most robots");
    batch->add_option("--box", batch_box, "Largest box side for robots and targets");
    batch->add_option("--max-ticks", batch_max_ticks, "Tick limit per run");
    batch->add_flag("--strict-frames", batch_strict, "Give each Look a random local frame");
    batch->add_option("--report", batch_report, "Append one line per run here");

    std::string verify_trace, verify_instance;
    auto* verify = app.add_subcommand("verify", "Re-check a stored trace");
    verify->add_option("--trace", verify_trace, "Trace file")->required();
    verify->add_option("--instance", verify_instance, "Instance file")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
            err << sub->help();
        } else {
            err << app.help();
        }
        return kExitInvalid;
    }

    try {
        if (gen->parsed()) {
            const std::string text = write_instance(generate_instance(gen_seed, gen_params));
            if (gen_out.empty()) {
                out << text;
            } else {
                write_file(gen_out, text);
            }
            return kExitOk;
        }

        if (run->parsed()) {
            const Instance instance = parse_instance(read_file(run_instance));
            SchedulerPolicy policy;
            policy.kind = scheduler_from(run_scheduler);
            policy.seed = run_seed;
            RunLimits limits;
            limits.max_ticks = run_max_ticks;
            const RunResult res = run_simulation(instance, policy, limits, run_strict);
            if (!run_trace.empty()) {
                write_file(run_trace, write_trace(Trace{{run_seed, policy.describe(), instance_hash(instance)},
                                                        res.trace}));
            }
            if (!run_report.empty()) append_line(run_report, report_line(instance, policy, res));
            if (run_dump) dump_ticks(instance, res.trace, out);
            out << report_line(instance, policy, res) << '\n';
            print_violations(res, out);
            return exit_for(res.verdict);
        }

        if (batch->parsed()) {
            SchedulerPolicy policy;
            policy.kind = scheduler_from(batch_scheduler);
            RunLimits limits;
            limits.max_ticks = batch_max_ticks;
            BatchStats stats;
            for (int i = 0; i < batch_count; ++i) {
                const std::uint64_t inst_seed = batch_seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i);
                const Instance instance = generate_random_instance(inst_seed, batch_kmin, batch_kmax, batch_box);
                for (int s = 0; s < batch_seeds; ++s) {
                    policy.seed = batch_seed + static_cast<std::uint64_t>(s);
                    const RunResult res = run_simulation(instance, policy, limits, batch_strict);
                    stats.add(res);
                    if (!batch_report.empty()) append_line(batch_report, report_line(instance, policy, res));
                    if (res.verdict != Verdict::Formed) {
                        err << "instance " << instance_hash(instance) << " seed " << policy.seed << ": "
                            << to_string(res.verdict) << '\n';
                        print_violations(res, err);
                    }
                }
            }
            stats.print(out);
            if (stats.violations > 0) return kExitViolation;
            if (stats.timeouts > 0) return kExitTimeout;
            return kExitOk;
        }

        if (verify->parsed()) {
            const Instance instance = parse_instance(read_file(verify_instance));
            const Trace trace = read_trace(read_file(verify_trace));
            if (trace.header.instance != instance_hash(instance)) {
                err << "trace was recorded for instance " << trace.header.instance << ", not "
                    << instance_hash(instance) << '\n';
                return kExitInvalid;
            }
            const RunResult res = replay_trace(instance, trace.events);
            print_violations(res, out);
            out << (res.verdict == Verdict::Formed ? "PASS" : std::string(to_string(res.verdict))) << '\n';
            return exit_for(res.verdict);
        }
    } catch (const InvalidInstance& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace apfgrid
