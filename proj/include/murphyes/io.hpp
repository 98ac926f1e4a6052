#pragma once

#include "murphyes/dominance.hpp"
#include "murphyes/models.hpp"
#include "murphyes/scores.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace murphyes::io {

/// Parses `date,close[,rk]` with a header row. Columns may appear in any
/// order; extra columns are ignored. An empty rk cell is a missing value.
/// Errors carry the 1-based line number.
MarketData parse_market_csv(std::string_view text);
MarketData read_market_csv(const std::filesystem::path& path);

struct ForecastFile {
    std::vector<std::string> dates;
    std::vector<JointForecast> forecasts;
    std::vector<double> realizations;
};

/// `date,var,es,realization`.
ForecastFile parse_forecast_csv(std::string_view text);
ForecastFile read_forecast_csv(const std::filesystem::path& path);
std::string forecast_csv(const ModelForecasts& forecasts);

/// Pairs two forecast files into an EvaluationSeries. Throws DataError naming
/// the first mismatching row when dates or realizations disagree.
EvaluationSeries align(const ForecastFile& a, const ForecastFile& b);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

bool valid_iso_date(std::string_view s);

} // namespace murphyes::io
