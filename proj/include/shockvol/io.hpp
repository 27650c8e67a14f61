#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "shockvol/calibrate.hpp"
#include "shockvol/empirics.hpp"
#include "shockvol/model.hpp"

namespace shockvol::io {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// Reads a `date,price` CSV. Throws IoError if unreadable, DataError with the data row on bad content.
PriceSeries read_price_csv(const std::filesystem::path& file);
PriceSeries parse_price_csv(const std::string& text);

/// Writes `t,I,X`, one row per grid point.
void write_path_csv(std::ostream& out, const LogPricePath& path);
/// Long format `path_id,t,I,X`.
void write_long_path_rows(std::ostream& out, std::size_t path_id, const LogPricePath& path);

/// Columnar CSV writer: header plus rows of doubles.
void write_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns);

nlohmann::ordered_json to_json(const SigmaLaw& law);
SigmaLaw sigma_law_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const ModelParams& p);
nlohmann::ordered_json to_json(const TheoryParams& p);
nlohmann::ordered_json to_json(const ObservableSet& obs);
ObservableSet observables_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const FitResult& r);

/// Serializes `j` with full-precision numbers and a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

void write_text(const std::filesystem::path& file, const std::string& text);
std::string read_text(const std::filesystem::path& file);

}  // namespace shockvol::io
