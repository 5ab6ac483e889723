#include "srlaser/io.hpp"
#include "srlaser/errors.hpp"
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

namespace srl {

std::string format_sig(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

namespace {

std::string cell_to_csv(const nlohmann::json& c) {
    if (c.is_number_float()) return format_sig(c.get<double>());
    if (c.is_string()) return c.get<std::string>();
    return c.dump();
}

} // namespace

void write_csv(std::ostream& os, const Table& t) {
    os << "# " << t.meta.dump() << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_to_csv(row[i]);
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::json j;
    j["meta"] = t.meta;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    os << std::setprecision(17) << j.dump(2) << "\n";
}

void write_table(const std::string& path, const std::string& format, const Table& t) {
    const bool csv = format == "csv";
    if (!csv && format != "json")
        throw config_error("unknown output format \"" + format + "\" (use csv or json)");
    if (path.empty() || path == "-") {
        csv ? write_csv(std::cout, t) : write_json(std::cout, t);
        return;
    }
    std::ofstream os(path);
    if (!os) throw config_error("cannot open output file " + path);
    csv ? write_csv(os, t) : write_json(os, t);
}

namespace {

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error("unknown key \"" + it.key() + "\" in " + where);
}

double need_number(const nlohmann::json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw config_error("missing key \"" + key + "\" in " + where);
    if (!obj[key].is_number())
        throw config_error("key \"" + key + "\" in " + where + " must be a number");
    return obj[key].get<double>();
}

} // namespace

LaserParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("config root must be a JSON object");
    reject_unknown(j, {"physical", "dimensionless", "pump"}, "config root");
    const bool has_phys = j.contains("physical");
    const bool has_dim = j.contains("dimensionless");
    if (has_phys == has_dim)
        throw config_error("config must contain exactly one of \"physical\" or \"dimensionless\"");
    LaserParams p;
    if (has_dim) {
        const auto& b = j["dimensionless"];
        if (!b.is_object()) throw config_error("\"dimensionless\" must be an object");
        reject_unknown(b, {"kappa", "gamma_perp", "Omega0", "f", "N0"}, "\"dimensionless\"");
        p.kappa = need_number(b, "kappa", "\"dimensionless\"");
        p.gamma_perp = need_number(b, "gamma_perp", "\"dimensionless\"");
        p.Omega0 = need_number(b, "Omega0", "\"dimensionless\"");
        p.f = need_number(b, "f", "\"dimensionless\"");
        p.N0 = need_number(b, "N0", "\"dimensionless\"");
    } else {
        const auto& b = j["physical"];
        if (!b.is_object()) throw config_error("\"physical\" must be an object");
        reject_unknown(b,
                       {"lambda0", "n_ref", "Vc", "vc_in_cubic_wavelengths", "N0", "gamma_par",
                        "gamma_perp", "dipole", "Q", "f"},
                       "\"physical\"");
        PhysicalInputs in;
        in.lambda0 = need_number(b, "lambda0", "\"physical\"");
        in.n_ref = need_number(b, "n_ref", "\"physical\"");
        in.Vc = need_number(b, "Vc", "\"physical\"");
        if (b.contains("vc_in_cubic_wavelengths")) {
            if (!b["vc_in_cubic_wavelengths"].is_boolean())
                throw config_error("\"vc_in_cubic_wavelengths\" must be a boolean");
            in.vc_in_cubic_wavelengths = b["vc_in_cubic_wavelengths"].get<bool>();
        }
        in.N0 = need_number(b, "N0", "\"physical\"");
        in.gamma_par = need_number(b, "gamma_par", "\"physical\"");
        in.gamma_perp = need_number(b, "gamma_perp", "\"physical\"");
        in.dipole = need_number(b, "dipole", "\"physical\"");
        in.Q = need_number(b, "Q", "\"physical\"");
        if (b.contains("f")) in.f = need_number(b, "f", "\"physical\"");
        p = normalize(in);
    }
    if (j.contains("pump")) {
        if (!j["pump"].is_number()) throw config_error("\"pump\" must be a number");
        p.P = j["pump"].get<double>();
    }
    return p;
}

LaserParams load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return params_from_json(j);
}

nlohmann::json params_to_json(const LaserParams& p) {
    return {{"kappa", p.kappa}, {"gamma_perp", p.gamma_perp}, {"Omega0", p.Omega0},
            {"f", p.f},         {"N0", p.N0},                 {"P", p.P}};
}

} // namespace srl
