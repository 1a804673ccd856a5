#include "acobs/cli/scenario_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "acobs/errors.hpp"
#include "acobs/sim/trajectory.hpp"

namespace acobs::cli {

namespace {

struct Entry {
    std::string value;
    int line;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string where(const std::string& section, const std::string& key) {
    return "[" + section + "] " + key;
}

double to_number(const std::string& section, const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(where(section, key) + ": expected a number, got '" + text + "'");
    }
    return value;
}

bool to_bool(const std::string& section, const std::string& key, const std::string& text) {
    if (text == "true" || text == "on" || text == "yes") return true;
    if (text == "false" || text == "off" || text == "no") return false;
    throw ConfigError(where(section, key) + ": expected true/false or on/off, got '" + text + "'");
}

class Document {
public:
    explicit Document(std::string_view text) {
        static const std::set<std::string> kSections = {"machine", "initial", "excitation",
                                                        "load", "sim", "analysis"};
        std::string current;
        std::istringstream in{std::string(text)};
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string_view line = raw;
            if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
                }
                current = std::string(trim(line.substr(1, line.size() - 2)));
                if (!kSections.contains(current)) {
                    throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                                      current + "]");
                }
                if (sections_.contains(current)) {
                    throw ConfigError("line " + std::to_string(line_no) + ": duplicate section [" +
                                      current + "]");
                }
                sections_[current];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
            }
            if (current.empty()) {
                throw ConfigError("line " + std::to_string(line_no) + ": key outside of a section");
            }
            std::string key(trim(line.substr(0, eq)));
            std::string value(trim(line.substr(eq + 1)));
            if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
            auto& section = sections_[current];
            if (section.contains(key)) {
                throw ConfigError(where(current, key) + ": duplicate key (line " +
                                  std::to_string(line_no) + ")");
            }
            section[key] = Entry{value, line_no};
        }
    }

    std::optional<std::string> text(const std::string& section, const std::string& key) {
        auto s = sections_.find(section);
        if (s == sections_.end()) return std::nullopt;
        auto e = s->second.find(key);
        if (e == s->second.end()) return std::nullopt;
        e->second.used = true;
        return e->second.value;
    }

    std::optional<double> number(const std::string& section, const std::string& key) {
        auto t = text(section, key);
        if (!t) return std::nullopt;
        return to_number(section, key, *t);
    }

    std::optional<bool> flag(const std::string& section, const std::string& key) {
        auto t = text(section, key);
        if (!t) return std::nullopt;
        return to_bool(section, key, *t);
    }

    /// Rejects every key that no reader asked for.
    void reject_unused() const {
        for (const auto& [name, section] : sections_) {
            for (const auto& [key, entry] : section) {
                if (!entry.used) {
                    throw ConfigError(where(name, key) + ": unknown key (line " +
                                      std::to_string(entry.line) + ")");
                }
            }
        }
    }

private:
    std::map<std::string, Section> sections_;
};

void read_param(Document& doc, const char* key, double& slot, std::vector<std::string>& notices) {
    if (auto v = doc.number("machine", key)) {
        slot = *v;
    } else {
        std::ostringstream msg;
        msg << "notice: [machine] " << key << " not set, using default " << slot;
        notices.push_back(msg.str());
    }
}

void read_pole_pairs(Document& doc, int& slot, std::vector<std::string>& notices) {
    if (auto v = doc.number("machine", "p")) {
        if (*v != static_cast<double>(static_cast<int>(*v))) {
            throw ConfigError("[machine] p: pole pairs must be an integer");
        }
        slot = static_cast<int>(*v);
    } else {
        notices.push_back("notice: [machine] p not set, using default " + std::to_string(slot));
    }
}

sim::ExcitationKind parse_kind(const std::string& text) {
    if (text == "zero") return sim::ExcitationKind::Zero;
    if (text == "dc") return sim::ExcitationKind::DC;
    if (text == "sinusoid") return sim::ExcitationKind::Sinusoid;
    if (text == "ramped-sinusoid") return sim::ExcitationKind::RampedSinusoid;
    if (text == "chirp") return sim::ExcitationKind::Chirp;
    throw ConfigError("[excitation] kind: unknown excitation '" + text + "'");
}

std::vector<sim::LoadSegment> parse_segments(const std::string& text) {
    std::vector<sim::LoadSegment> out;
    std::istringstream in(text);
    std::string pair;
    while (std::getline(in, pair, ',')) {
        std::istringstream fields{std::string(trim(pair))};
        std::string t_text;
        std::string v_text;
        std::string extra;
        if (!(fields >> t_text >> v_text) || (fields >> extra)) {
            throw ConfigError("[load] segments: expected 't_start value' pairs separated by commas");
        }
        out.push_back({to_number("load", "segments", t_text), to_number("load", "segments", v_text)});
    }
    return out;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
    Document doc(text);
    ScenarioConfig cfg;
    sim::Scenario& sc = cfg.scenario;

    const auto type = doc.text("machine", "type");
    if (!type) throw ConfigError("[machine] type: missing machine type");
    const auto machine = sim::parse_machine(*type);
    if (!machine) throw ConfigError("[machine] type: unknown machine '" + *type + "'");
    sc.machine = *machine;

    bool steady_state = false;
    if (sc.machine == sim::MachineKind::IM) {
        models::IMParams p;
        read_param(doc, "r_s", p.R_s, cfg.notices);
        read_param(doc, "r_r", p.R_r, cfg.notices);
        read_param(doc, "l_s", p.L_s, cfg.notices);
        read_param(doc, "l_r", p.L_r, cfg.notices);
        read_param(doc, "m", p.M, cfg.notices);
        read_pole_pairs(doc, p.p, cfg.notices);
        read_param(doc, "j", p.J, cfg.notices);
        sc.params = p;

        models::IMState x;
        x.current(0) = doc.number("initial", "i_alpha").value_or(0.0);
        x.current(1) = doc.number("initial", "i_beta").value_or(0.0);
        x.flux(0) = doc.number("initial", "psi_alpha").value_or(0.0);
        x.flux(1) = doc.number("initial", "psi_beta").value_or(0.0);
        x.omega = doc.number("initial", "omega_e").value_or(0.0);
        x.load_torque = doc.number("initial", "t_r").value_or(0.0);
        steady_state = doc.flag("initial", "steady_state").value_or(false);
        sc.x0 = x;
    } else {
        const models::SMVariant variant = sim::sm_variant(sc.machine);
        models::SMParams p = models::default_sm_params(variant);
        read_param(doc, "r_s", p.R_s, cfg.notices);
        read_param(doc, "l_0", p.L_0, cfg.notices);
        read_param(doc, "l_2", p.L_2, cfg.notices);
        read_pole_pairs(doc, p.p, cfg.notices);
        read_param(doc, "j", p.J, cfg.notices);
        if (models::has_pinned_field(variant)) {
            read_param(doc, "psi_r", p.psi_r, cfg.notices);
            if (variant != models::SMVariant::SyRM) read_param(doc, "m_f", p.M_f, cfg.notices);
        } else {
            read_param(doc, "r_f", p.R_f, cfg.notices);
            read_param(doc, "m_f", p.M_f, cfg.notices);
            read_param(doc, "l_f", p.L_f, cfg.notices);
        }
        sc.params = p;

        models::SMState x;
        x.current(0) = doc.number("initial", "i_alpha").value_or(0.0);
        x.current(1) = doc.number("initial", "i_beta").value_or(0.0);
        if (!models::has_pinned_field(variant)) {
            x.current(2) = doc.number("initial", "i_f").value_or(0.0);
        } else if (doc.text("initial", "i_f")) {
            throw ConfigError("[initial] i_f: the field current is pinned for " +
                              std::string(models::to_string(variant)));
        }
        x = models::pin_field(x, p);
        x.omega = doc.number("initial", "omega").value_or(0.0);
        x.theta = doc.number("initial", "theta").value_or(0.0);
        sc.x0 = x;
    }

    auto& ex = sc.excitation;
    if (auto kind = doc.text("excitation", "kind")) ex.kind = parse_kind(*kind);
    ex.amplitude = doc.number("excitation", "amplitude").value_or(0.0);
    ex.frequency = doc.number("excitation", "frequency").value_or(0.0);
    ex.frequency_rate = doc.number("excitation", "frequency_rate").value_or(0.0);
    ex.phase = doc.number("excitation", "phase").value_or(0.0);
    if (sc.machine == sim::MachineKind::WRSM || sc.machine == sim::MachineKind::NWRSM) {
        ex.field_voltage = doc.number("excitation", "field_voltage").value_or(0.0);
        ex.field_frequency = doc.number("excitation", "field_frequency").value_or(0.0);
    }

    if (auto seg = doc.text("load", "segments")) sc.load.segments = parse_segments(*seg);
    sc.load.locked_rotor = doc.flag("load", "locked_rotor").value_or(false);
    sc.load.balance = doc.flag("load", "balance").value_or(false);

    if (auto dt = doc.number("sim", "dt")) sc.dt = *dt;
    sc.allow_negative_resistance = doc.flag("sim", "allow_negative_resistance").value_or(false);
    if (auto dur = doc.number("sim", "duration")) sc.duration = *dur;

    if (auto tol = doc.number("analysis", "rank_tol")) cfg.analysis.rank_tol = *tol;
    if (auto oracle = doc.flag("analysis", "oracle")) cfg.analysis.oracle = *oracle;
    if (auto frac = doc.number("analysis", "strict_fraction")) cfg.strict_fraction = *frac;

    doc.reject_unused();

    if (!(cfg.analysis.rank_tol > 0.0 && cfg.analysis.rank_tol < 1.0)) {
        throw ConfigError("[analysis] rank_tol: must lie in (0, 1)");
    }
    if (!(cfg.strict_fraction >= 0.0 && cfg.strict_fraction <= 1.0)) {
        throw ConfigError("[analysis] strict_fraction: must lie in [0, 1]");
    }

    try {
        sim::validate(sc);
        if (steady_state) sc.x0 = sim::steady_state_hint(sc);
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("[machine] invalid parameters: ") + e.what());
    } catch (const SingularPhasorError& e) {
        throw ConfigError(std::string("[initial] steady_state: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read scenario file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

}  // namespace acobs::cli
