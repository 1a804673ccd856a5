#include <doctest.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "acobs/cli/commands.hpp"
#include "acobs/cli/csv.hpp"
#include "acobs/cli/scenario_file.hpp"
#include "acobs/errors.hpp"
#include "acobs/sim/trajectory.hpp"

using namespace acobs;
using namespace acobs::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = ACOBS_SCENARIO_DIR;

std::string config_error(std::string_view text) {
    try {
        parse_scenario(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

fs::path temp_path(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "acobs_tests";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write_temp(const std::string& name, std::string_view text) {
    const fs::path p = temp_path(name);
    std::ofstream(p) << text;
    return p;
}

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n;
}

constexpr std::string_view kMinimal = R"(
[machine]
type = im
r_s = 1.2
r_r = 1.0
l_s = 0.12
l_r = 0.12
m = 0.11
p = 2
j = 0.01
[sim]
dt = 1e-3
duration = 0.01
)";

}  // namespace

TEST_CASE("scenario parser") {
    SUBCASE("minimal file") {
        const ScenarioConfig c = parse_scenario(kMinimal);
        CHECK(c.scenario.machine == sim::MachineKind::IM);
        CHECK(c.scenario.dt == 1e-3);
        CHECK(c.notices.empty());
        CHECK(c.analysis.oracle);
    }
    SUBCASE("comments") {
        const ScenarioConfig c =
            parse_scenario(std::string(kMinimal) + "# note\n[analysis]\nrank_tol = 1e-8  # trailing\n");
        CHECK(c.analysis.rank_tol == 1e-8);
    }
    SUBCASE("missing constants fall back with a notice") {
        const ScenarioConfig c = parse_scenario("[machine]\ntype = spmsm\n");
        CHECK(c.scenario.machine == sim::MachineKind::SPMSM);
        CHECK(c.notices.size() >= 4);
        CHECK(c.notices[0].find("not set") != std::string::npos);
    }
    SUBCASE("unknown section") {
        CHECK(config_error(std::string(kMinimal) + "[motor]\n").find("motor") != std::string::npos);
    }
    SUBCASE("unknown key names section and key") {
        const std::string e = config_error(std::string(kMinimal) + "[load]\ntorque = 1\n");
        CHECK(e.find("[load]") != std::string::npos);
        CHECK(e.find("torque") != std::string::npos);
    }
    SUBCASE("duplicates") {
        CHECK_FALSE(config_error(std::string(kMinimal) + "[sim]\n").empty());
        CHECK(config_error("[machine]\ntype = im\nm = 0.1\nm = 0.1\n").find("m") != std::string::npos);
    }
    SUBCASE("malformed number names the key") {
        const std::string e = config_error(std::string(kMinimal) + "[excitation]\nkind = dc\namplitude = 2x\n");
        CHECK(e.find("amplitude") != std::string::npos);
    }
    SUBCASE("non-integer pole pairs") {
        CHECK(config_error("[machine]\ntype = im\np = 2.5\n").find("p") != std::string::npos);
    }
    SUBCASE("pinned field current") {
        CHECK(config_error("[machine]\ntype = ipmsm\n[initial]\ni_f = 1\n").find("pinned") !=
              std::string::npos);
    }
    SUBCASE("sigma out of range") {
        const std::string e = config_error("[machine]\ntype = im\nl_s = 0.1\nl_r = 0.1\nm = 0.11\n");
        CHECK(e.find("sigma") != std::string::npos);
    }
    SUBCASE("unknown machine and excitation") {
        CHECK(config_error("[machine]\ntype = dcm\n").find("dcm") != std::string::npos);
        CHECK_FALSE(config_error(std::string(kMinimal) + "[excitation]\nkind = square\n").empty());
    }
    SUBCASE("bundled scenarios parse") {
        for (const auto& entry : fs::directory_iterator(kScenarios)) {
            CAPTURE(entry.path().string());
            CHECK_NOTHROW(load_scenario(entry.path()));
        }
    }
}

TEST_CASE("csv") {
    SUBCASE("format_double round trips") {
        for (double v : {0.0, -0.0, 1.0 / 3.0, 6.02214076e23, -1e-300, 314.15926535897931,
                         std::numeric_limits<double>::denorm_min()}) {
            const std::string s = format_double(v);
            double back = 1.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
            CHECK(ec == std::errc());
            CHECK(ptr == s.data() + s.size());
            CHECK(std::bit_cast<std::uint64_t>(back) == std::bit_cast<std::uint64_t>(v));
        }
    }
    SUBCASE("trajectory round trip is bit exact") {
        for (const char* name : {"im_chirp_ramp.scenario", "wrsm_spinup.scenario"}) {
            ScenarioConfig c = load_scenario(kScenarios / name);
            c.scenario.duration = 0.05;
            const sim::Trajectory tr = sim::integrate(c.scenario);
            std::stringstream ss;
            write_trajectory_csv(ss, tr);
            CHECK(ss.str().find('\r') == std::string::npos);
            const sim::Trajectory back = read_trajectory_csv(ss, c.scenario.machine);
            REQUIRE(back.size() == tr.size());
            CHECK(back.dt == doctest::Approx(tr.dt));
            for (std::size_t k = 0; k < tr.size(); ++k) {
                CHECK(back.samples[k].t == tr.samples[k].t);
                CHECK(back.samples[k].state == tr.samples[k].state);
                CHECK(back.samples[k].u == tr.samples[k].u);
                CHECK(back.samples[k].du == tr.samples[k].du);
            }
        }
    }
    SUBCASE("headers") {
        CHECK(trajectory_header(sim::MachineKind::IM).size() == 1 + 6 + 2 + 2);
        CHECK(trajectory_header(sim::MachineKind::SPMSM).size() == 1 + 5 + 3 + 3);
        CHECK(report_header(sim::MachineKind::IM).back() == "observable");
    }
    SUBCASE("header mismatch") {
        std::stringstream ss("t,a,b\n0,1,2\n");
        CHECK_THROWS_AS(read_trajectory_csv(ss, sim::MachineKind::IM), ConfigError);
    }
    SUBCASE("absent values are empty fields") {
        ScenarioConfig c = load_scenario(kScenarios / "wrsm_spinup.scenario");
        c.scenario.duration = 0.002;
        const sim::Trajectory tr = sim::integrate(c.scenario);
        std::stringstream ss;
        write_report_csv(ss, obsv::analyze_trajectory(tr, c.scenario, {obsv::kDefaultRankTol, false}));
        std::string header, first;
        std::getline(ss, header);
        std::getline(ss, first);
        // no oracle and no margin at the first sample
        CHECK(first.find(",,") != std::string::npos);
    }
}

TEST_CASE("commands") {
    std::ostringstream out, err;
    SUBCASE("simulate writes one row per grid point") {
        const fs::path scenario = write_temp("minimal.scenario", kMinimal);
        const fs::path csv = temp_path("minimal.csv");
        fs::remove(csv);
        CHECK(cmd_simulate(scenario, csv, out, err) == exit_code::kOk);
        CHECK(count_lines(csv) == 1 + 11);
        CHECK_FALSE(fs::exists(fs::path(csv.string() + ".tmp")));
    }
    SUBCASE("invalid machine exits 2 without output") {
        const fs::path scenario =
            write_temp("bad_sigma.scenario", "[machine]\ntype = im\nl_s = 0.1\nl_r = 0.1\nm = 0.11\n");
        const fs::path csv = temp_path("bad_sigma.csv");
        fs::remove(csv);
        CHECK(cmd_simulate(scenario, csv, out, err) == exit_code::kConfig);
        CHECK(err.str().find("sigma") != std::string::npos);
        CHECK_FALSE(fs::exists(csv));
    }
    SUBCASE("missing file exits 2") {
        CHECK(cmd_simulate(temp_path("nope.scenario"), temp_path("nope.csv"), out, err) ==
              exit_code::kConfig);
    }
    SUBCASE("divergence exits 3 without output") {
        const fs::path scenario = write_temp(
            "diverge.scenario",
            "[machine]\ntype = im\nr_s = -50\nr_r = 1.0\nl_s = 0.12\nl_r = 0.12\nm = 0.11\np = 2\nj = 0.01\n"
            "[initial]\ni_alpha = 1\n[sim]\ndt = 1e-4\nduration = 5\nallow_negative_resistance = true\n");
        const fs::path csv = temp_path("diverge.csv");
        fs::remove(csv);
        CHECK(cmd_simulate(scenario, csv, out, err) == exit_code::kDivergence);
        CHECK_FALSE(fs::exists(csv));
        CHECK_FALSE(fs::exists(fs::path(csv.string() + ".tmp")));
    }
    SUBCASE("analyze a fully observable run") {
        const fs::path csv = temp_path("im_50hz_report.csv");
        CHECK(cmd_analyze(kScenarios / "im_50hz.scenario", csv, true, std::nullopt, out, err) ==
              exit_code::kOk);
        CHECK(out.str().find("fraction observable: 1") != std::string::npos);
        CHECK(count_lines(csv) == 1 + 10001);
    }
    SUBCASE("analyze a saved trajectory") {
        const fs::path scenario = kScenarios / "ipmsm_standstill.scenario";
        const fs::path traj = temp_path("ipmsm_traj.csv");
        const fs::path direct = temp_path("ipmsm_direct.csv");
        const fs::path replay = temp_path("ipmsm_replay.csv");
        REQUIRE(cmd_simulate(scenario, traj, out, err) == exit_code::kOk);
        REQUIRE(cmd_analyze(scenario, direct, false, std::nullopt, out, err) == exit_code::kOk);
        REQUIRE(cmd_analyze(scenario, replay, false, traj, out, err) == exit_code::kOk);
        std::ifstream a(direct), b(replay);
        const std::string sa((std::istreambuf_iterator<char>(a)), {});
        const std::string sb((std::istreambuf_iterator<char>(b)), {});
        CHECK(sa == sb);
    }
    SUBCASE("strict fails on a standstill spmsm") {
        CHECK(cmd_analyze(kScenarios / "spmsm_standstill.scenario", temp_path("spmsm.csv"), true,
                          std::nullopt, out, err) == exit_code::kStrict);
        CHECK(cmd_analyze(kScenarios / "spmsm_standstill.scenario", temp_path("spmsm.csv"), false,
                          std::nullopt, out, err) == exit_code::kOk);
    }
    SUBCASE("singular interval reported") {
        CHECK(cmd_analyze(kScenarios / "im_dc_constspeed.scenario", temp_path("dc.csv"), false,
                          std::nullopt, out, err) == exit_code::kOk);
        CHECK(out.str().find("[0, 0.5]") != std::string::npos);
    }
    SUBCASE("verify") {
        CHECK(cmd_verify(7, 1, false, out, err) == exit_code::kOk);
        CHECK(out.str().find("all properties hold") != std::string::npos);
        CHECK(cmd_verify(7, 20, true, out, err) == exit_code::kFailure);
        CHECK(cmd_verify(7, 0, false, out, err) == exit_code::kConfig);
    }
}
