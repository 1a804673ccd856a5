#include "acobs/cli/commands.hpp"

#include <fstream>
#include <ostream>

#include "acobs/cli/csv.hpp"
#include "acobs/cli/scenario_file.hpp"
#include "acobs/cli/verify.hpp"
#include "acobs/errors.hpp"
#include "acobs/obsv/report.hpp"
#include "acobs/sim/trajectory.hpp"

namespace acobs::cli {

namespace {

ScenarioConfig load_with_notices(const std::filesystem::path& path, std::ostream& err) {
    ScenarioConfig cfg = load_scenario(path);
    for (const auto& n : cfg.notices) err << n << '\n';
    return cfg;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kConfig;
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kDivergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kFailure;
    }
}

}  // namespace

int cmd_simulate(const std::filesystem::path& scenario, const std::filesystem::path& output,
                 std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioConfig cfg = load_with_notices(scenario, err);
        const sim::Trajectory traj = sim::integrate(cfg.scenario);
        write_file_atomically(output, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
        out << "wrote " << traj.size() << " samples to " << output.string() << '\n';
        return exit_code::kOk;
    });
}

int cmd_analyze(const std::filesystem::path& scenario, const std::filesystem::path& output,
                bool strict, const std::optional<std::filesystem::path>& trajectory,
                std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioConfig cfg = load_with_notices(scenario, err);
        sim::Trajectory traj;
        if (trajectory) {
            std::ifstream in(*trajectory);
            if (!in) throw ConfigError("cannot read trajectory " + trajectory->string());
            traj = read_trajectory_csv(in, cfg.scenario.machine);
        } else {
            traj = sim::integrate(cfg.scenario);
        }
        const auto report = obsv::analyze_trajectory(traj, cfg.scenario, cfg.analysis);
        write_file_atomically(output, [&](std::ostream& os) { write_report_csv(os, report); });

        const auto& s = report.summary;
        out << "samples: " << s.samples << '\n'
            << "fraction observable: " << format_double(s.fraction_observable) << '\n'
            << "min sigma ratio: " << format_double(s.min_sigma_ratio) << '\n'
            << "min |delta|: " << format_double(s.min_abs_delta) << '\n'
            << "singular intervals: " << s.singular_intervals.size() << '\n';
        for (const auto& iv : s.singular_intervals) {
            out << "  [" << format_double(iv.t_begin) << ", " << format_double(iv.t_end) << "]\n";
        }
        if (strict && 1.0 - s.fraction_observable > cfg.strict_fraction) {
            err << "strict: singular fraction " << format_double(1.0 - s.fraction_observable)
                << " exceeds " << format_double(cfg.strict_fraction) << '\n';
            return exit_code::kStrict;
        }
        return exit_code::kOk;
    });
}

int cmd_verify(std::uint64_t seed, int n_states, bool mutate, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto results = run_verify({seed, n_states, mutate});
        print_results(out, results);
        const bool ok = all_passed(results);
        out << (ok ? "verify: all properties hold\n" : "verify: FAILED\n");
        return ok ? exit_code::kOk : exit_code::kFailure;
    });
}

}  // namespace acobs::cli
