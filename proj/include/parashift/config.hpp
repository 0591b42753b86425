#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "parashift/errors.hpp"
#include "parashift/halfplane_map.hpp"
#include "parashift/measure.hpp"

namespace parashift {

enum class ExperimentKind { classify, orbit, rate, drift, suite };

inline const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::classify: return "classify";
        case ExperimentKind::orbit: return "orbit";
        case ExperimentKind::rate: return "rate";
        case ExperimentKind::drift: return "drift";
        case ExperimentKind::suite: return "suite";
    }
    return "?";
}

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::classify;
    double beta = 0.0;
    bool has_map = false;  // beta was given (suite runs do not need one)
    RealMeasure measure;
    HalfPlanePoint z0{0.0, 1.0};
    std::complex<double> tau{1.0, 0.0};
    std::complex<double> z_disk{0.0, 0.0};
    long horizon = 100000;
    long stride = 100;
    std::uint64_t seed = 12345;
    int suite_count = 200;
    double drift_min = 0.1;
    double oracle_tolerance = 1e-2;
    double aitken_tolerance = 1e-6;
    std::string out_dir = ".";

    ParabolicMap make_map() const {
        if (!has_map) throw ValidationError("this experiment needs a map ('beta' and 'measure')");
        return ParabolicMap(beta, measure);
    }
};

namespace detail {

using json = nlohmann::json;

inline ParseError field_error(const std::string& path, const std::string& what) {
    return ParseError("config field '" + path + "': " + what);
}

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) throw field_error(path.empty() ? item.key() : path + "." + item.key(),
                                      "unknown field");
    }
}

inline double get_number(const json& obj, const char* key, const std::string& path) {
    if (!obj.at(key).is_number()) throw field_error(path + "." + key, "expected a number");
    return obj.at(key).get<double>();
}

inline RealMeasure parse_measure(const json& j, const std::string& path) {
    if (!j.is_object()) throw field_error(path, "expected an object");
    check_keys(j, path, {"atoms", "pieces", "tails"});
    RealMeasure m;
    if (j.contains("atoms")) {
        if (!j["atoms"].is_array()) throw field_error(path + ".atoms", "expected an array");
        for (std::size_t i = 0; i < j["atoms"].size(); ++i) {
            const auto& a = j["atoms"][i];
            const std::string apath = path + ".atoms[" + std::to_string(i) + "]";
            if (!a.is_object()) throw field_error(apath, "expected an object");
            check_keys(a, apath, {"t", "mass"});
            if (!a.contains("t") || !a.contains("mass"))
                throw field_error(apath, "needs 't' and 'mass'");
            m.add(Atom{get_number(a, "t", apath), get_number(a, "mass", apath)});
        }
    }
    if (j.contains("pieces")) {
        if (!j["pieces"].is_array()) throw field_error(path + ".pieces", "expected an array");
        for (std::size_t i = 0; i < j["pieces"].size(); ++i) {
            const auto& p = j["pieces"][i];
            const std::string ppath = path + ".pieces[" + std::to_string(i) + "]";
            if (!p.is_object()) throw field_error(ppath, "expected an object");
            check_keys(p, ppath, {"a", "b", "height"});
            if (!p.contains("a") || !p.contains("b") || !p.contains("height"))
                throw field_error(ppath, "needs 'a', 'b' and 'height'");
            m.add(HistogramPiece{get_number(p, "a", ppath), get_number(p, "b", ppath),
                                 get_number(p, "height", ppath)});
        }
    }
    if (j.contains("tails")) {
        if (!j["tails"].is_array()) throw field_error(path + ".tails", "expected an array");
        for (std::size_t i = 0; i < j["tails"].size(); ++i) {
            const auto& t = j["tails"][i];
            const std::string tpath = path + ".tails[" + std::to_string(i) + "]";
            if (!t.is_object()) throw field_error(tpath, "expected an object");
            check_keys(t, tpath, {"side", "t0", "c", "p"});
            if (!t.contains("side") || !t.contains("t0") || !t.contains("c") || !t.contains("p"))
                throw field_error(tpath, "needs 'side', 't0', 'c' and 'p'");
            if (!t["side"].is_string()) throw field_error(tpath + ".side", "expected a string");
            const std::string side = t["side"].get<std::string>();
            if (side != "positive" && side != "negative")
                throw field_error(tpath + ".side", "expected \"positive\" or \"negative\"");
            m.add(PowerTail{side == "positive" ? TailSide::positive : TailSide::negative,
                            get_number(t, "t0", tpath), get_number(t, "c", tpath),
                            get_number(t, "p", tpath)});
        }
    }
    return m;
}

inline std::complex<double> parse_complex_pair(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw field_error(path, "expected [real, imag]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline ExperimentKind parse_kind(const std::string& s, const std::string& path) {
    if (s == "classify") return ExperimentKind::classify;
    if (s == "orbit") return ExperimentKind::orbit;
    if (s == "rate") return ExperimentKind::rate;
    if (s == "drift") return ExperimentKind::drift;
    if (s == "suite") return ExperimentKind::suite;
    throw field_error(path, "expected one of classify|orbit|rate|drift|suite");
}

inline std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace detail

// Consistency checks shared by file parsing and flag overrides.
inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.horizon < 1) throw ValidationError("horizon must be >= 1");
    if (cfg.stride < 1) throw ValidationError("stride must be >= 1");
    if (cfg.suite_count < 1) throw ValidationError("suite count must be >= 1");
    require_upper_half_plane(cfg.z0);
    if (std::fabs(std::abs(cfg.tau) - 1.0) > 1e-9)
        throw ValidationError("tau must lie on the unit circle");
    if (cfg.kind == ExperimentKind::rate && !(std::abs(cfg.z_disk) < 1.0))
        throw ValidationError("disk base point must satisfy |z| < 1");
    if (cfg.kind != ExperimentKind::suite) cfg.make_map();  // non-nullity etc.
}

inline ExperimentConfig parse_config(const std::string& text) {
    detail::json j;
    try {
        j = detail::json::parse(text);
    } catch (const detail::json::parse_error& e) {
        throw ParseError("config is not valid JSON (line " +
                         std::to_string(detail::line_of_byte(text, e.byte)) + "): " + e.what());
    }
    if (!j.is_object()) throw ParseError("config root must be an object");
    detail::check_keys(j, "", {"beta", "measure", "experiment", "z0", "tau", "z_disk", "horizon",
                               "stride", "seed", "suite", "tolerances", "out"});
    ExperimentConfig cfg;
    if (j.contains("experiment")) {
        if (!j["experiment"].is_string())
            throw detail::field_error("experiment", "expected a string");
        cfg.kind = detail::parse_kind(j["experiment"].get<std::string>(), "experiment");
    }
    if (j.contains("beta")) {
        if (!j["beta"].is_number()) throw detail::field_error("beta", "expected a number");
        cfg.beta = j["beta"].get<double>();
        cfg.has_map = true;
    }
    if (j.contains("measure")) cfg.measure = detail::parse_measure(j["measure"], "measure");
    if (j.contains("z0")) {
        const auto z = detail::parse_complex_pair(j["z0"], "z0");
        cfg.z0 = {z.real(), z.imag()};
    }
    if (j.contains("tau")) cfg.tau = detail::parse_complex_pair(j["tau"], "tau");
    if (j.contains("z_disk")) cfg.z_disk = detail::parse_complex_pair(j["z_disk"], "z_disk");
    if (j.contains("horizon")) {
        if (!j["horizon"].is_number_integer())
            throw detail::field_error("horizon", "expected an integer");
        cfg.horizon = j["horizon"].get<long>();
    }
    if (j.contains("stride")) {
        if (!j["stride"].is_number_integer())
            throw detail::field_error("stride", "expected an integer");
        cfg.stride = j["stride"].get<long>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw detail::field_error("seed", "expected an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("suite")) {
        const auto& s = j["suite"];
        if (!s.is_object()) throw detail::field_error("suite", "expected an object");
        detail::check_keys(s, "suite", {"count", "drift_min"});
        if (s.contains("count")) {
            if (!s["count"].is_number_integer())
                throw detail::field_error("suite.count", "expected an integer");
            cfg.suite_count = s["count"].get<int>();
        }
        if (s.contains("drift_min")) cfg.drift_min = detail::get_number(s, "drift_min", "suite");
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) throw detail::field_error("tolerances", "expected an object");
        detail::check_keys(t, "tolerances", {"oracle", "aitken"});
        if (t.contains("oracle")) cfg.oracle_tolerance = detail::get_number(t, "oracle", "tolerances");
        if (t.contains("aitken")) cfg.aitken_tolerance = detail::get_number(t, "aitken", "tolerances");
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw detail::field_error("out", "expected a string");
        cfg.out_dir = j["out"].get<std::string>();
    }
    validate_config(cfg);
    return cfg;
}

}  // namespace parashift
