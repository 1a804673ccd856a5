#include "acobs/cli/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "acobs/errors.hpp"

namespace acobs::cli {

namespace {

std::vector<std::string> state_columns(sim::MachineKind machine) {
    if (machine == sim::MachineKind::IM) {
        return {"i_alpha", "i_beta", "psi_alpha", "psi_beta", "omega_e", "t_r"};
    }
    return {"i_alpha", "i_beta", "i_f", "omega", "theta"};
}

std::vector<std::string> input_columns(sim::MachineKind machine) {
    if (machine == sim::MachineKind::IM) return {"v_alpha", "v_beta"};
    return {"v_alpha", "v_beta", "v_f"};
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

void append(std::vector<std::string>& row, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(format_double(v(i)));
}

std::string optional_field(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& text, std::size_t line) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("csv line " + std::to_string(line) + ": bad number '" + text + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_double: buffer too small");
    return std::string(buf.data(), ptr);
}

std::vector<std::string> trajectory_header(sim::MachineKind machine) {
    std::vector<std::string> h{"t"};
    for (auto& c : state_columns(machine)) h.push_back(c);
    const auto inputs = input_columns(machine);
    for (auto& c : inputs) h.push_back(c);
    for (auto& c : inputs) h.push_back("d" + c);
    return h;
}

std::vector<std::string> report_header(sim::MachineKind machine) {
    std::vector<std::string> h{"t"};
    for (auto& c : state_columns(machine)) h.push_back(c);
    for (auto& c : input_columns(machine)) h.push_back(c);
    for (const char* c : {"delta_closed", "delta_numeric", "sigma_min", "sigma_max", "rank",
                          "margin_lhs", "margin_rhs", "approx_factor", "observable"}) {
        h.emplace_back(c);
    }
    return h;
}

void write_trajectory_csv(std::ostream& out, const sim::Trajectory& traj) {
    write_row(out, trajectory_header(traj.machine));
    for (const auto& s : traj.samples) {
        std::vector<std::string> row{format_double(s.t)};
        append(row, s.state);
        append(row, s.u);
        append(row, s.du);
        write_row(out, row);
    }
}

void write_report_csv(std::ostream& out, const obsv::ObservabilityReport& report) {
    write_row(out, report_header(report.machine));
    for (const auto& s : report.samples) {
        std::vector<std::string> row{format_double(s.t)};
        append(row, s.state);
        append(row, s.u);
        row.push_back(format_double(s.delta_closed));
        row.push_back(optional_field(s.delta_numeric));
        row.push_back(format_double(s.sigma_min));
        row.push_back(format_double(s.sigma_max));
        row.push_back(std::to_string(s.rank));
        row.push_back(optional_field(s.margin_lhs));
        row.push_back(optional_field(s.margin_rhs));
        row.push_back(optional_field(s.approx_factor));
        row.push_back(s.observable ? "1" : "0");
        write_row(out, row);
    }
}

sim::Trajectory read_trajectory_csv(std::istream& in, sim::MachineKind machine) {
    const auto header = trajectory_header(machine);
    std::string line;
    if (!std::getline(in, line) || split(line) != header) {
        throw ConfigError("csv header does not match a " + std::string(sim::to_string(machine)) +
                          " trajectory");
    }
    const int n = sim::state_dim(machine);
    const int m = sim::input_dim(machine);
    sim::Trajectory traj;
    traj.machine = machine;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != header.size()) {
            throw ConfigError("csv line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " fields");
        }
        sim::TrajectorySample s;
        s.t = parse_double(fields[0], line_no);
        s.state.resize(n);
        s.u.resize(m);
        s.du.resize(m);
        for (int i = 0; i < n; ++i) s.state(i) = parse_double(fields[1 + i], line_no);
        for (int i = 0; i < m; ++i) s.u(i) = parse_double(fields[1 + n + i], line_no);
        for (int i = 0; i < m; ++i) s.du(i) = parse_double(fields[1 + n + m + i], line_no);
        traj.samples.push_back(std::move(s));
    }
    if (traj.samples.size() >= 2) traj.dt = traj.samples[1].t - traj.samples[0].t;
    return traj;
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer) {
    auto tmp = path;
    tmp += ".tmp";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw ConfigError("cannot write " + path.string());
            writer(out);
            out.flush();
            if (!out) throw std::runtime_error("write failed for " + path.string());
        }
        std::filesystem::rename(tmp, path);
    } catch (...) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw;
    }
}

}  // namespace acobs::cli
