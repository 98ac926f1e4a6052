#include "murphyes/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

namespace murphyes::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw DataError("line " + std::to_string(line) + ": " + msg);
}

double parse_number(std::string_view s, std::size_t line, const char* what) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
        fail(line, std::string("invalid ") + what + " value '" + std::string(s) + "'");
    }
    return v;
}

// Iterates nonblank lines, skipping an optional UTF-8 BOM.
template <class F>
void for_each_line(std::string_view text, F&& f) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find('\n', start);
        const auto line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        ++line_no;
        if (!trim(line).empty()) f(line_no, line);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
}

struct Header {
    std::vector<std::string> names;
    std::size_t line = 0;

    long find(std::string_view name) const {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) return static_cast<long>(i);
        }
        return -1;
    }
};

} // namespace

bool valid_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    const int y = std::stoi(std::string(s.substr(0, 4)));
    const int m = std::stoi(std::string(s.substr(5, 2)));
    const int d = std::stoi(std::string(s.substr(8, 2)));
    if (m < 1 || m > 12 || d < 1) return false;
    static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return d <= days[m - 1] + (m == 2 && leap ? 1 : 0);
}

MarketData parse_market_csv(std::string_view text) {
    MarketData data;
    Header header;
    long c_date = -1, c_close = -1, c_rk = -1;
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        const auto cells = split(line);
        if (header.names.empty()) {
            for (auto c : cells) header.names.emplace_back(c);
            header.line = line_no;
            c_date = header.find("date");
            c_close = header.find("close");
            c_rk = header.find("rk");
            if (c_date < 0 || c_close < 0) fail(line_no, "header must contain 'date' and 'close' columns");
            return;
        }
        if (cells.size() != header.names.size()) {
            fail(line_no, "expected " + std::to_string(header.names.size()) + " fields, found " +
                              std::to_string(cells.size()));
        }
        const auto date = cells[static_cast<std::size_t>(c_date)];
        if (!valid_iso_date(date)) fail(line_no, "invalid date '" + std::string(date) + "'");
        if (!data.dates.empty() && !(data.dates.back() < date)) fail(line_no, "dates must be strictly increasing");
        const double close = parse_number(cells[static_cast<std::size_t>(c_close)], line_no, "close");
        if (!(close > 0.0)) fail(line_no, "close must be positive");
        data.dates.emplace_back(date);
        data.close.push_back(close);
        if (c_rk >= 0) {
            const auto cell = cells[static_cast<std::size_t>(c_rk)];
            if (cell.empty() || cell == "NA" || cell == "nan" || cell == "NaN") {
                data.rk.push_back(std::numeric_limits<double>::quiet_NaN());
            } else {
                const double rk = parse_number(cell, line_no, "rk");
                if (rk < 0.0) fail(line_no, "rk must be nonnegative");
                data.rk.push_back(rk);
            }
        }
    });
    if (header.names.empty()) throw DataError("line 1: missing header");
    if (data.size() < 2) throw DataError("input has fewer than two data rows");
    return data;
}

MarketData read_market_csv(const std::filesystem::path& path) { return parse_market_csv(read_text(path)); }

ForecastFile parse_forecast_csv(std::string_view text) {
    ForecastFile out;
    bool have_header = false;
    long c_date = -1, c_var = -1, c_es = -1, c_y = -1;
    std::size_t width = 0;
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        const auto cells = split(line);
        if (!have_header) {
            Header h;
            for (auto c : cells) h.names.emplace_back(c);
            c_date = h.find("date");
            c_var = h.find("var");
            c_es = h.find("es");
            c_y = h.find("realization");
            if (c_date < 0 || c_var < 0 || c_es < 0 || c_y < 0) {
                fail(line_no, "header must contain date,var,es,realization");
            }
            width = cells.size();
            have_header = true;
            return;
        }
        if (cells.size() != width) {
            fail(line_no, "expected " + std::to_string(width) + " fields, found " + std::to_string(cells.size()));
        }
        const auto date = cells[static_cast<std::size_t>(c_date)];
        if (!valid_iso_date(date)) fail(line_no, "invalid date '" + std::string(date) + "'");
        const double var = parse_number(cells[static_cast<std::size_t>(c_var)], line_no, "var");
        const double es = parse_number(cells[static_cast<std::size_t>(c_es)], line_no, "es");
        const double y = parse_number(cells[static_cast<std::size_t>(c_y)], line_no, "realization");
        if (var < es) fail(line_no, "var must be >= es");
        out.dates.emplace_back(date);
        out.forecasts.emplace_back(var, es);
        out.realizations.push_back(y);
    });
    if (!have_header) throw DataError("line 1: missing header");
    if (out.dates.empty()) throw DataError("forecast file has no data rows");
    return out;
}

ForecastFile read_forecast_csv(const std::filesystem::path& path) { return parse_forecast_csv(read_text(path)); }

std::string forecast_csv(const ModelForecasts& f) {
    std::ostringstream out;
    out << "date,var,es,realization\n";
    for (std::size_t i = 0; i < f.forecasts.size(); ++i) {
        out << f.dates[i] << ',' << format_double(f.forecasts[i].var()) << ',' << format_double(f.forecasts[i].es())
            << ',' << format_double(f.realizations[i]) << '\n';
    }
    return out.str();
}

EvaluationSeries align(const ForecastFile& a, const ForecastFile& b) {
    const std::size_t n = std::min(a.dates.size(), b.dates.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.dates[i] != b.dates[i]) {
            throw DataError("date mismatch at row " + std::to_string(i + 1) + ": " + a.dates[i] + " vs " + b.dates[i]);
        }
        if (a.realizations[i] != b.realizations[i]) {
            throw DataError("realization mismatch at row " + std::to_string(i + 1) + " (" + a.dates[i] + ")");
        }
    }
    if (a.dates.size() != b.dates.size()) {
        const auto& longer = a.dates.size() > b.dates.size() ? a : b;
        throw DataError("date mismatch at row " + std::to_string(n + 1) + ": " + longer.dates[n] +
                        " present in only one file");
    }
    return EvaluationSeries::make(a.forecasts, b.forecasts, a.realizations);
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

} // namespace murphyes::io
