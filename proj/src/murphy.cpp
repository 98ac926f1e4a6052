#include "murphyes/murphy.hpp"

#include "murphyes/io.hpp"
#include "murphyes/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace murphyes {

void EvaluationSeries::validate() const {
    const std::size_t n = realizations.size();
    if (forecasts_a.size() != n || times.size() != n || (!forecasts_b.empty() && forecasts_b.size() != n)) {
        throw std::invalid_argument("evaluation series: all lists must have equal length");
    }
    for (std::size_t t = 0; t < n; ++t) {
        require_finite(realizations[t], "realization");
        if (t > 0 && times[t] <= times[t - 1]) {
            throw std::invalid_argument("evaluation series: times must be strictly increasing");
        }
    }
}

EvaluationSeries EvaluationSeries::make(std::vector<JointForecast> a, std::vector<JointForecast> b,
                                        std::vector<double> y) {
    EvaluationSeries s;
    s.times.resize(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) s.times[t] = static_cast<std::int64_t>(t);
    s.forecasts_a = std::move(a);
    s.forecasts_b = std::move(b);
    s.realizations = std::move(y);
    s.validate();
    return s;
}

double elementary_score(GridKind kind, const JointForecast& fc, double y, double v, Level alpha) {
    return kind == GridKind::V1 ? elementary_score_v1(fc.var(), y, v, alpha)
                                : elementary_score_v2(fc, y, v, alpha);
}

MurphyCurve murphy_curve(const EvaluationSeries& series, Method method, const ThresholdGrid& grid, Level alpha,
                         std::size_t threads) {
    series.validate();
    if (series.size() == 0) throw std::invalid_argument("murphy_curve: empty series");
    if (method == Method::B && !series.has_b()) throw std::invalid_argument("murphy_curve: series has no method B");
    const auto& fcs = method == Method::A ? series.forecasts_a : series.forecasts_b;
    const std::size_t n = series.size();

    MurphyCurve curve{method == Method::A ? "A" : "B", grid, std::vector<double>(grid.size()),
                      std::vector<double>(grid.size())};
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        std::vector<double> s(n);
        double sum = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            s[t] = elementary_score(grid.kind(), fcs[t], series.realizations[t], grid[i], alpha);
            sum += s[t];
        }
        const double mean = sum / static_cast<double>(n);
        double var = 0.0;
        if (n > 1) {
            double ss = 0.0;
            for (double v : s) ss += (v - mean) * (v - mean);
            var = ss / static_cast<double>(n - 1) / static_cast<double>(n);
        }
        curve.mean_scores[i] = mean;
        curve.pointwise_variance[i] = var;
    });
    return curve;
}

DiffCurve murphy_diff(const EvaluationSeries& series, const ThresholdGrid& grid, Level alpha,
                      const VarianceEstimator& variance, double z, std::size_t threads) {
    series.validate();
    if (series.size() == 0) throw std::invalid_argument("murphy_diff: empty series");
    if (!series.has_b()) throw std::invalid_argument("murphy_diff: both methods are required");
    const std::size_t n = series.size();
    const std::size_t m = grid.size();

    DiffCurve curve{"A-B", grid, std::vector<double>(m), std::vector<double>(m), std::vector<double>(m), false};
    parallel_for(m, threads, [&](std::size_t i) {
        std::vector<double> d(n);
        double sum = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double y = series.realizations[t];
            d[t] = elementary_score(grid.kind(), series.forecasts_a[t], y, grid[i], alpha) -
                   elementary_score(grid.kind(), series.forecasts_b[t], y, grid[i], alpha);
            sum += d[t];
        }
        const double mean = sum / static_cast<double>(n);
        const double se = mean_standard_error(d, variance);
        curve.mean_diffs[i] = mean;
        curve.ci_lower[i] = mean - z * se;
        curve.ci_upper[i] = mean + z * se;
    });
    curve.a_dominates_on_grid =
        std::all_of(curve.mean_diffs.begin(), curve.mean_diffs.end(), [](double d) { return d <= 0.0; });
    return curve;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

const ThresholdGrid& grid_of(const CurveData& c) {
    return std::visit([](const auto& x) -> const ThresholdGrid& { return x.grid; }, c);
}

const std::string& label_of(const CurveData& c) {
    return std::visit([](const auto& x) -> const std::string& { return x.label; }, c);
}

std::string curves_csv(const std::vector<CurveData>& curves) {
    const bool diff = std::holds_alternative<DiffCurve>(curves.front());
    const bool labelled = curves.size() > 1;
    std::ostringstream out;
    if (labelled) out << "label,";
    out << (diff ? "v,mean_diff,ci_lower,ci_upper\n" : "v,mean_score,variance\n");
    using io::format_double;
    for (const auto& c : curves) {
        const auto& g = grid_of(c);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (labelled) out << label_of(c) << ',';
            out << format_double(g[i]);
            if (diff) {
                const auto& d = std::get<DiffCurve>(c);
                out << ',' << format_double(d.mean_diffs[i]) << ',' << format_double(d.ci_lower[i]) << ','
                    << format_double(d.ci_upper[i]);
            } else {
                const auto& m = std::get<MurphyCurve>(c);
                out << ',' << format_double(m.mean_scores[i]) << ',' << format_double(m.pointwise_variance[i]);
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string curves_json(const std::vector<CurveData>& curves) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : curves) {
        nlohmann::ordered_json j;
        j["label"] = label_of(c);
        j["kind"] = grid_of(c).kind() == GridKind::V1 ? "v1" : "v2";
        j["v"] = grid_of(c).values();
        if (const auto* d = std::get_if<DiffCurve>(&c)) {
            j["mean_diff"] = d->mean_diffs;
            j["ci_lower"] = d->ci_lower;
            j["ci_upper"] = d->ci_upper;
            j["a_dominates_on_grid"] = d->a_dominates_on_grid;
        } else {
            const auto& m = std::get<MurphyCurve>(c);
            j["mean_score"] = m.mean_scores;
            j["variance"] = m.pointwise_variance;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string fixed(double x, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string tick_label(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

// "Nice" tick spacing covering [lo, hi] with roughly `count` intervals.
std::vector<double> ticks(double lo, double hi, int count) {
    const double raw = (hi - lo) / count;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
        step = f * mag;
        if (step >= raw) break;
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
        out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return out;
}

std::string curves_svg(const std::vector<CurveData>& curves) {
    constexpr double width = 720, height = 440;
    constexpr double left = 70, right = 160, top = 30, bottom = 50;
    constexpr std::array<const char*, 6> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    const bool diff = std::holds_alternative<DiffCurve>(curves.front());
    const auto& grid = grid_of(curves.front());

    double ylo = std::numeric_limits<double>::infinity();
    double yhi = -ylo;
    auto extend = [&](const std::vector<double>& v) {
        for (double x : v) {
            ylo = std::min(ylo, x);
            yhi = std::max(yhi, x);
        }
    };
    for (const auto& c : curves) {
        if (const auto* d = std::get_if<DiffCurve>(&c)) {
            extend(d->ci_lower);
            extend(d->ci_upper);
        } else {
            extend(std::get<MurphyCurve>(c).mean_scores);
        }
    }
    ylo = std::min(ylo, 0.0);
    yhi = std::max(yhi, 0.0);
    if (yhi - ylo < 1e-12) {
        ylo -= 1.0;
        yhi += 1.0;
    }
    const double pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;
    const double xlo = grid.values().front();
    const double xhi = grid.size() > 1 ? grid.values().back() : xlo + 1.0;

    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto sx = [&](double x) { return left + (x - xlo) / (xhi - xlo) * pw; };
    auto sy = [&](double y) { return top + (yhi - y) / (yhi - ylo) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // axes and ticks
    out << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
        << "\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
    out << "</g>\n<g fill=\"black\">\n";
    for (double t : ticks(xlo, xhi, 6)) {
        out << "<line x1=\"" << fixed(sx(t)) << "\" y1=\"" << top + ph << "\" x2=\"" << fixed(sx(t)) << "\" y2=\""
            << top + ph + 5 << "\" stroke=\"black\"/>";
        out << "<text x=\"" << fixed(sx(t)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
            << tick_label(t) << "</text>\n";
    }
    for (double t : ticks(ylo, yhi, 6)) {
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(sy(t)) << "\" x2=\"" << left << "\" y2=\""
            << fixed(sy(t)) << "\" stroke=\"black\"/>";
        out << "<text x=\"" << left - 8 << "\" y=\"" << fixed(sy(t) + 4) << "\" text-anchor=\"end\">"
            << tick_label(t) << "</text>\n";
    }
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">threshold v"
        << (grid.kind() == GridKind::V1 ? "1" : "2") << "</text>\n";
    out << "<text transform=\"translate(16," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << (diff ? "mean score difference" : "mean elementary score") << "</text>\n";
    out << "</g>\n";

    // zero line
    out << "<line x1=\"" << left << "\" y1=\"" << fixed(sy(0.0)) << "\" x2=\"" << left + pw << "\" y2=\""
        << fixed(sy(0.0)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

    for (std::size_t k = 0; k < curves.size(); ++k) {
        const char* colour = palette[k % palette.size()];
        const auto& c = curves[k];
        const auto& g = grid_of(c);
        if (const auto* d = std::get_if<DiffCurve>(&c)) {
            out << "<polygon fill=\"" << colour << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
            for (std::size_t i = 0; i < g.size(); ++i) out << fixed(sx(g[i])) << ',' << fixed(sy(d->ci_upper[i])) << ' ';
            for (std::size_t i = g.size(); i-- > 0;) out << fixed(sx(g[i])) << ',' << fixed(sy(d->ci_lower[i])) << ' ';
            out << "\"/>\n";
        }
        const auto& ys = diff ? std::get<DiffCurve>(c).mean_diffs : std::get<MurphyCurve>(c).mean_scores;
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < g.size(); ++i) out << fixed(sx(g[i])) << ',' << fixed(sy(ys[i])) << ' ';
        out << "\"/>\n";
    }

    // legend
    out << "<g>\n";
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        const double lx = left + pw + 15;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly
            << "\" stroke=\"" << palette[k % palette.size()] << "\" stroke-width=\"2\"/>";
        out << "<text x=\"" << lx + 26 << "\" y=\"" << ly + 4 << "\">" << escape_xml(label_of(curves[k]))
            << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace

std::string emit_curve_data(const std::vector<CurveData>& curves, CurveFormat format) {
    if (curves.empty()) throw std::invalid_argument("emit_curve_data: no curves");
    const bool diff = std::holds_alternative<DiffCurve>(curves.front());
    for (const auto& c : curves) {
        if (std::holds_alternative<DiffCurve>(c) != diff) {
            throw std::invalid_argument("emit_curve_data: cannot mix Murphy and difference curves");
        }
        if (!(grid_of(c) == grid_of(curves.front()))) {
            throw std::invalid_argument("emit_curve_data: overlaid curves must share a grid");
        }
    }
    switch (format) {
    case CurveFormat::CSV: return curves_csv(curves);
    case CurveFormat::JSON: return curves_json(curves);
    case CurveFormat::SVG: return curves_svg(curves);
    }
    throw std::invalid_argument("emit_curve_data: unknown format");
}

} // namespace murphyes
