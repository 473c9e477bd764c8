#include "funsol/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace funsol {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size() || !std::isfinite(v))
            throw ConfigError("key '" + key + "': invalid number '" + raw + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': invalid number '" + raw + "'");
    }
}

int parse_int(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(raw, &pos);
        if (pos != raw.size()) throw ConfigError("key '" + key + "': invalid integer '" + raw + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': invalid integer '" + raw + "'");
    }
}

FaceTag parse_tag(const std::string& key, const std::string& raw) {
    if (raw == "gamma1") return FaceTag::gamma1;
    if (raw == "gamma2") return FaceTag::gamma2;
    if (raw == "gamma3") return FaceTag::gamma3;
    throw ConfigError("key '" + key + "': tag must be gamma1, gamma2 or gamma3, got '" + raw + "'");
}

CoefficientFamily::Kind parse_kind(const std::string& key, const std::string& raw) {
    using Kind = CoefficientFamily::Kind;
    if (raw == "constant") return Kind::constant;
    if (raw == "polynomial") return Kind::polynomial;
    if (raw == "exponential") return Kind::exponential;
    if (raw == "rational") return Kind::rational;
    throw ConfigError("key '" + key + "': unknown coefficient family '" + raw + "'");
}

const char* kind_name(CoefficientFamily::Kind kind) {
    using Kind = CoefficientFamily::Kind;
    switch (kind) {
        case Kind::constant: return "constant";
        case Kind::polynomial: return "polynomial";
        case Kind::exponential: return "exponential";
        case Kind::rational: return "rational";
    }
    return "?";
}

constexpr const char* kPolyKeys[6] = {"c00", "c10", "c01", "c20", "c11", "c02"};

/// Fills one coefficient family from the keys carrying the given prefix
/// ("a_" or "b_").  Consumes the keys it recognizes.
CoefficientFamily read_family(std::map<std::string, std::string>& kv, const std::string& prefix) {
    using Kind = CoefficientFamily::Kind;
    CoefficientFamily fam;

    auto take = [&](const std::string& name) -> std::optional<std::string> {
        const auto it = kv.find(prefix + name);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    const auto family = take("family");
    if (!family) throw ConfigError("[coefficients] missing key '" + prefix + "family'");
    fam.kind = parse_kind(prefix + "family", *family);

    switch (fam.kind) {
        case Kind::constant: {
            if (const auto v = take("value")) fam.value = parse_double(prefix + "value", *v);
            break;
        }
        case Kind::polynomial: {
            for (int i = 0; i < 6; ++i)
                if (const auto v = take(kPolyKeys[i]))
                    fam.poly[i] = parse_double(prefix + kPolyKeys[i], *v);
            break;
        }
        case Kind::exponential: {
            if (const auto v = take("scale")) fam.scale = parse_double(prefix + "scale", *v);
            if (const auto v = take("cu")) fam.cu = parse_double(prefix + "cu", *v);
            if (const auto v = take("cw")) fam.cw = parse_double(prefix + "cw", *v);
            break;
        }
        case Kind::rational: {
            for (int i = 0; i < 6; ++i) {
                if (const auto v = take(std::string("num_") + kPolyKeys[i]))
                    fam.num[i] = parse_double(prefix + "num_" + kPolyKeys[i], *v);
                if (const auto v = take(std::string("den_") + kPolyKeys[i]))
                    fam.den[i] = parse_double(prefix + "den_" + kPolyKeys[i], *v);
            }
            break;
        }
    }
    return fam;
}

void write_family(std::ostringstream& out, const CoefficientFamily& fam, const std::string& prefix) {
    using Kind = CoefficientFamily::Kind;
    out << prefix << "family = " << kind_name(fam.kind) << "\n";
    switch (fam.kind) {
        case Kind::constant:
            out << prefix << "value = " << format_double(fam.value) << "\n";
            break;
        case Kind::polynomial:
            for (int i = 0; i < 6; ++i)
                out << prefix << kPolyKeys[i] << " = " << format_double(fam.poly[i]) << "\n";
            break;
        case Kind::exponential:
            out << prefix << "scale = " << format_double(fam.scale) << "\n";
            out << prefix << "cu = " << format_double(fam.cu) << "\n";
            out << prefix << "cw = " << format_double(fam.cw) << "\n";
            break;
        case Kind::rational:
            for (int i = 0; i < 6; ++i)
                out << prefix << "num_" << kPolyKeys[i] << " = " << format_double(fam.num[i]) << "\n";
            for (int i = 0; i < 6; ++i)
                out << prefix << "den_" << kPolyKeys[i] << " = " << format_double(fam.den[i]) << "\n";
            break;
    }
}

double eval_poly(const std::array<double, 6>& c, double u, double w) {
    return c[0] + c[1] * u + c[2] * w + c[3] * u * u + c[4] * u * w + c[5] * w * w;
}

}  // namespace

double CoefficientFamily::eval(double u, double w) const {
    switch (kind) {
        case Kind::constant: return value;
        case Kind::polynomial: return eval_poly(poly, u, w);
        case Kind::exponential: return scale * std::exp(cu * u + cw * w);
        case Kind::rational: return eval_poly(num, u, w) / eval_poly(den, u, w);
    }
    return 0.0;
}

CoefficientFn CoefficientFamily::fn() const {
    return [fam = *this](double u, double w) { return fam.eval(u, w); };
}

ProblemData SolverConfig::problem() const {
    ProblemData p;
    p.u1 = u1;
    p.u2 = u2;
    p.w1 = w1;
    p.w2 = w2;
    p.coeffs.a = coeff_a.fn();
    p.coeffs.b = coeff_b.fn();
    p.coeffs.lipschitz_constant_hint = lipschitz_hint;
    return p;
}

SolverConfig SolverConfig::parse(const std::string& text) {
    // section -> (key -> value); strict: unknown sections/keys are errors.
    std::map<std::string, std::map<std::string, std::string>> data;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "geometry" && section != "boundary" && section != "coefficients" &&
                section != "resolution" && section != "tolerance" && section != "output")
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
            data[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!data[section].emplace(key, value).second)
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }

    SolverConfig cfg;

    // [geometry]
    {
        auto& kv = data["geometry"];
        if (const auto it = kv.find("shape"); it != kv.end()) {
            if (it->second == "rectangle") cfg.geometry.shape = GridSpec::Shape::rectangle;
            else if (it->second == "lshape") cfg.geometry.shape = GridSpec::Shape::lshape;
            else throw ConfigError("geometry.shape must be 'rectangle' or 'lshape'");
            kv.erase(it);
        }
        if (const auto it = kv.find("lx"); it != kv.end()) {
            cfg.geometry.lx = parse_double("lx", it->second);
            kv.erase(it);
        }
        if (const auto it = kv.find("ly"); it != kv.end()) {
            cfg.geometry.ly = parse_double("ly", it->second);
            kv.erase(it);
        }
        // Tag defaults: flow from gamma1 (left) to gamma2 (right), no flux
        // elsewhere; explicit keys override.
        cfg.geometry.edge_tags = {{"left", FaceTag::gamma1},
                                  {"right", FaceTag::gamma2},
                                  {"bottom", FaceTag::gamma3},
                                  {"top", FaceTag::gamma3}};
        if (cfg.geometry.shape == GridSpec::Shape::lshape) {
            cfg.geometry.edge_tags["notch_v"] = FaceTag::gamma3;
            cfg.geometry.edge_tags["notch_h"] = FaceTag::gamma3;
        }
        for (auto it = kv.begin(); it != kv.end();) {
            if (it->first.rfind("tag_", 0) == 0) {
                const std::string segment = it->first.substr(4);
                if (cfg.geometry.edge_tags.find(segment) == cfg.geometry.edge_tags.end())
                    throw ConfigError("geometry: unknown edge segment '" + segment + "'");
                cfg.geometry.edge_tags[segment] = parse_tag(it->first, it->second);
                it = kv.erase(it);
            } else {
                ++it;
            }
        }
        if (!kv.empty()) throw ConfigError("geometry: unknown key '" + kv.begin()->first + "'");
    }

    // [boundary]
    {
        auto& kv = data["boundary"];
        for (const char* key : {"u1", "u2", "w1", "w2"})
            if (kv.find(key) == kv.end())
                throw ConfigError("[boundary] missing required key '" + std::string(key) + "'");
        cfg.u1 = parse_double("u1", kv["u1"]);
        cfg.u2 = parse_double("u2", kv["u2"]);
        cfg.w1 = parse_double("w1", kv["w1"]);
        cfg.w2 = parse_double("w2", kv["w2"]);
        kv.erase("u1"), kv.erase("u2"), kv.erase("w1"), kv.erase("w2");
        if (!kv.empty()) throw ConfigError("boundary: unknown key '" + kv.begin()->first + "'");
    }

    // [coefficients]
    {
        auto& kv = data["coefficients"];
        cfg.coeff_a = read_family(kv, "a_");
        cfg.coeff_b = read_family(kv, "b_");
        if (const auto it = kv.find("lipschitz_hint"); it != kv.end()) {
            cfg.lipschitz_hint = parse_double("lipschitz_hint", it->second);
            kv.erase(it);
        }
        if (!kv.empty()) throw ConfigError("coefficients: unknown key '" + kv.begin()->first + "'");
    }

    // [resolution]
    {
        auto& kv = data["resolution"];
        cfg.geometry.nx = 64;
        cfg.geometry.ny = 64;
        if (const auto it = kv.find("nx"); it != kv.end()) {
            cfg.geometry.nx = parse_int("nx", it->second);
            kv.erase(it);
        }
        if (const auto it = kv.find("ny"); it != kv.end()) {
            cfg.geometry.ny = parse_int("ny", it->second);
            kv.erase(it);
        }
        if (const auto it = kv.find("n_ode"); it != kv.end()) {
            cfg.n_ode = parse_int("n_ode", it->second);
            kv.erase(it);
        }
        if (!kv.empty()) throw ConfigError("resolution: unknown key '" + kv.begin()->first + "'");
    }

    // [tolerance]
    {
        auto& kv = data["tolerance"];
        if (const auto it = kv.find("tol_endpoint"); it != kv.end()) {
            cfg.tolerances.endpoint = parse_double("tol_endpoint", it->second);
            kv.erase(it);
        }
        if (const auto it = kv.find("tol_linear"); it != kv.end()) {
            cfg.tolerances.linear = parse_double("tol_linear", it->second);
            kv.erase(it);
        }
        if (const auto it = kv.find("tol_picard"); it != kv.end()) {
            cfg.tolerances.picard = parse_double("tol_picard", it->second);
            kv.erase(it);
        }
        if (const auto it = kv.find("tol_compare"); it != kv.end()) {
            cfg.tolerances.compare = parse_double("tol_compare", it->second);
            kv.erase(it);
        }
        if (!kv.empty()) throw ConfigError("tolerance: unknown key '" + kv.begin()->first + "'");
    }

    // [output]
    {
        auto& kv = data["output"];
        if (const auto it = kv.find("fields"); it != kv.end()) {
            cfg.output.fields = it->second;
            kv.erase(it);
        }
        if (const auto it = kv.find("profile"); it != kv.end()) {
            cfg.output.profile = it->second;
            kv.erase(it);
        }
        if (const auto it = kv.find("summary"); it != kv.end()) {
            cfg.output.summary = it->second;
            kv.erase(it);
        }
        if (const auto it = kv.find("convergence"); it != kv.end()) {
            cfg.output.convergence = it->second;
            kv.erase(it);
        }
        if (!kv.empty()) throw ConfigError("output: unknown key '" + kv.begin()->first + "'");
    }

    return cfg;
}

SolverConfig SolverConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string SolverConfig::serialize() const {
    std::ostringstream out;
    out << "[geometry]\n";
    out << "shape = " << (geometry.shape == GridSpec::Shape::rectangle ? "rectangle" : "lshape")
        << "\n";
    out << "lx = " << format_double(geometry.lx) << "\n";
    out << "ly = " << format_double(geometry.ly) << "\n";
    for (const auto& [segment, tag] : geometry.edge_tags)
        out << "tag_" << segment << " = " << to_string(tag) << "\n";

    out << "\n[boundary]\n";
    out << "u1 = " << format_double(u1) << "\n";
    out << "u2 = " << format_double(u2) << "\n";
    out << "w1 = " << format_double(w1) << "\n";
    out << "w2 = " << format_double(w2) << "\n";

    out << "\n[coefficients]\n";
    write_family(out, coeff_a, "a_");
    write_family(out, coeff_b, "b_");
    if (lipschitz_hint) out << "lipschitz_hint = " << format_double(*lipschitz_hint) << "\n";

    out << "\n[resolution]\n";
    out << "nx = " << geometry.nx << "\n";
    out << "ny = " << geometry.ny << "\n";
    out << "n_ode = " << n_ode << "\n";

    out << "\n[tolerance]\n";
    out << "tol_endpoint = " << format_double(tolerances.endpoint) << "\n";
    out << "tol_linear = " << format_double(tolerances.linear) << "\n";
    out << "tol_picard = " << format_double(tolerances.picard) << "\n";
    out << "tol_compare = " << format_double(tolerances.compare) << "\n";

    out << "\n[output]\n";
    if (!output.fields.empty()) out << "fields = " << output.fields << "\n";
    if (!output.profile.empty()) out << "profile = " << output.profile << "\n";
    if (!output.summary.empty()) out << "summary = " << output.summary << "\n";
    if (!output.convergence.empty()) out << "convergence = " << output.convergence << "\n";
    return out.str();
}

}  // namespace funsol
