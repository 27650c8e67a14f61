#include "shockvol/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "shockvol/error.hpp"

namespace shockvol::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t row) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) throw DataError("unparsable price '" + field + "'", row);
    return v;
}

}  // namespace

PriceSeries parse_price_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty price file");
    if (trim(line) != "date,price") throw DataError("expected header 'date,price'");
    PriceSeries ps;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        ++row;
        const auto comma = t.find(',');
        if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
            throw DataError("expected two fields", row);
        }
        const std::string date = trim(t.substr(0, comma));
        const double price = parse_number(trim(t.substr(comma + 1)), row);
        if (!(price > 0.0) || !std::isfinite(price)) throw DataError("price must be finite and > 0", row);
        if (!ps.dates.empty() && !(ps.dates.back() < date)) throw DataError("dates must be strictly increasing", row);
        ps.dates.push_back(date);
        ps.prices.push_back(price);
    }
    return ps;
}

PriceSeries read_price_csv(const std::filesystem::path& file) { return parse_price_csv(read_text(file)); }

void write_path_csv(std::ostream& out, const LogPricePath& path) {
    out << "t,I,X\n";
    for (std::size_t j = 0; j < path.grid.size(); ++j) {
        out << format_double(path.grid[j]) << ',' << format_double(path.i_vals[j]) << ',' << format_double(path.x_vals[j])
            << '\n';
    }
}

void write_long_path_rows(std::ostream& out, std::size_t path_id, const LogPricePath& path) {
    for (std::size_t j = 0; j < path.grid.size(); ++j) {
        out << path_id << ',' << format_double(path.grid[j]) << ',' << format_double(path.i_vals[j]) << ','
            << format_double(path.x_vals[j]) << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) throw std::invalid_argument("write_csv: header/column count mismatch");
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_double(columns[c].at(r));
        out << '\n';
    }
}

nlohmann::ordered_json to_json(const SigmaLaw& law) {
    nlohmann::ordered_json j;
    if (const auto* c = std::get_if<ConstantSigma>(&law.variant())) {
        j["kind"] = "constant";
        j["value"] = c->value;
    } else if (const auto* t = std::get_if<TwoPointSigma>(&law.variant())) {
        j["kind"] = "two_point";
        j["lo"] = t->lo;
        j["hi"] = t->hi;
        j["p_hi"] = t->p_hi;
    } else {
        const auto& l = std::get<LogNormalSigma>(law.variant());
        j["kind"] = "log_normal";
        j["mu"] = l.mu;
        j["s"] = l.s;
    }
    return j;
}

SigmaLaw sigma_law_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return SigmaLaw(ConstantSigma{j.at("value").get<double>()});
    if (kind == "two_point") {
        return SigmaLaw(TwoPointSigma{j.at("lo").get<double>(), j.at("hi").get<double>(), j.at("p_hi").get<double>()});
    }
    if (kind == "log_normal") return SigmaLaw(LogNormalSigma{j.at("mu").get<double>(), j.at("s").get<double>()});
    throw std::invalid_argument("unknown sigma law kind '" + kind + "'");
}

nlohmann::ordered_json to_json(const ModelParams& p) {
    nlohmann::ordered_json j;
    j["D"] = p.D;
    j["lambda"] = p.lambda;
    j["sigma_law"] = to_json(p.sigma_law);
    j["e_sigma"] = p.mean_sigma();
    j["e_sigma_sq"] = p.mean_sigma_sq();
    return j;
}

nlohmann::ordered_json to_json(const TheoryParams& p) {
    nlohmann::ordered_json j;
    j["D"] = p.D;
    j["lambda"] = p.lambda;
    j["e_sigma"] = p.e_sigma;
    j["e_sigma_sq"] = p.e_sigma_sq;
    return j;
}

nlohmann::ordered_json to_json(const ObservableSet& obs) {
    nlohmann::ordered_json j;
    j["c1_hat"] = obs.c1_hat;
    j["c2_hat"] = obs.c2_hat;
    auto a = nlohmann::ordered_json::array();
    for (const ScalingFit& f : obs.a_hat) {
        a.push_back({{"q", f.q}, {"A_hat", f.a_hat}, {"logC_hat", f.log_c_hat}, {"r2", f.r_squared}});
    }
    j["a_hat"] = a;
    auto r = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < obs.rho_hat.size(); ++i) r.push_back({{"t", obs.rho_t[i]}, {"rho_hat", obs.rho_hat[i]}});
    j["rho1_hat"] = r;
    return j;
}

ObservableSet observables_from_json(const nlohmann::json& j) {
    ObservableSet obs;
    obs.c1_hat = j.at("c1_hat").get<double>();
    obs.c2_hat = j.at("c2_hat").get<double>();
    for (const auto& e : j.at("a_hat")) {
        obs.a_hat.push_back({e.at("q").get<double>(), e.at("A_hat").get<double>(), e.value("logC_hat", 0.0),
                             e.value("r2", 1.0)});
    }
    for (const auto& e : j.at("rho1_hat")) {
        obs.rho_t.push_back(e.at("t").get<double>());
        obs.rho_hat.push_back(e.at("rho_hat").get<double>());
    }
    return obs;
}

nlohmann::ordered_json to_json(const FitResult& r) {
    nlohmann::ordered_json j;
    j["D"] = r.params.D;
    j["lambda"] = r.params.lambda;
    j["e_sigma"] = r.params.e_sigma;
    j["e_sigma_sq"] = r.params.e_sigma_sq;
    j["loss"] = r.loss_value;
    j["breakdown"] = {{"c_term", r.breakdown.c_term}, {"a_term", r.breakdown.a_term}, {"rho_term", r.breakdown.rho_term}};
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["evaluations"] = r.evaluations;
    return j;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + file.string() + "' failed");
}

std::string read_text(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open '" + file.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace shockvol::io
