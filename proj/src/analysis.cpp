#include "apollo/analysis.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace apollo {

FitResult fit_exponent(const CountSeries& series, const FitWindow& window) {
    if (series.size() == 0) throw InvalidInputError("empty series");
    Int min_t = window.min_t;
    Int max_t = window.max_t;
    if (max_t == 0) max_t = series.thresholds.back();
    if (min_t == 0) {
        // default window: top two decades of the grid
        double top = static_cast<double>(max_t);
        min_t = static_cast<Int>(std::llround(top / 100.0));
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    FitResult fit;
    fit.first_index = series.size();
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.thresholds[i] < min_t || series.thresholds[i] > max_t) continue;
        if (series.n[i] <= 0) continue;
        double x = std::log(static_cast<double>(series.thresholds[i]));
        double y = std::log(static_cast<double>(series.n[i]));
        xs.push_back(x);
        ys.push_back(y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        if (fit.first_index == series.size()) fit.first_index = i;
        fit.last_index = i;
        ++count;
    }
    if (count < 3) throw InvalidInputError("fit window has fewer than 3 usable points");
    double n = static_cast<double>(count);
    double denom = n * sxx - sx * sx;
    if (std::fabs(denom) < 1e-12 * n * sxx)
        throw InvalidInputError("degenerate fit window: thresholds not distinct");
    fit.alpha_hat = (n * sxy - sx * sy) / denom;
    double intercept = (sy - fit.alpha_hat * sx) / n;
    fit.c_hat = std::exp(intercept);
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (intercept + fit.alpha_hat * xs[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.points = count;
    return fit;
}

void write_series_csv(std::ostream& os, const CountSeries& series) {
    os << "T,N,N2,pi,pi2\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        os << to_string(series.thresholds[i]) << "," << series.n[i] << "," << series.n2[i] << ","
           << series.pi[i] << "," << series.pi2[i] << "\n";
}

CountSeries read_series_csv(std::istream& is) {
    CountSeries s;
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            if (line.rfind("T,", 0) == 0) continue;  // header row present
        }
        std::stringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() < 2) throw InvalidInputError("malformed series row: " + line);
        s.thresholds.push_back(parse_int(cells[0]));
        s.n.push_back(static_cast<std::int64_t>(parse_int(cells[1])));
        s.n2.push_back(cells.size() > 2 ? static_cast<std::int64_t>(parse_int(cells[2])) : 0);
        s.pi.push_back(cells.size() > 3 ? static_cast<std::int64_t>(parse_int(cells[3])) : 0);
        s.pi2.push_back(cells.size() > 4 ? static_cast<std::int64_t>(parse_int(cells[4])) : 0);
    }
    return s;
}

namespace {

nlohmann::json json_int(Int v) {
    if (v >= static_cast<Int>(INT64_MIN) && v <= static_cast<Int>(INT64_MAX))
        return static_cast<std::int64_t>(v);
    return to_string(v);  // decimal string beyond 64 bits
}

}  // namespace

std::string report_json(const CountSeries& series, const FitResult* fit,
                        const std::vector<RatioRow>* ratios, const std::string& extra_json) {
    nlohmann::json j;
    j["schema"] = "1";
    j["root"] = series.root_label;
    j["workers"] = series.workers;
    // wall time deliberately left out: identical configurations must produce
    // bit-identical reports

    nlohmann::json rows = nlohmann::json::array();
    bool pair_identity = true;
    bool monotone = true;
    for (std::size_t i = 0; i < series.size(); ++i) {
        nlohmann::json row;
        row["T"] = json_int(series.thresholds[i]);
        row["N"] = series.n[i];
        row["N2"] = series.n2[i];
        row["pi"] = series.pi[i];
        row["pi2"] = series.pi2[i];
        bool above_root = series.thresholds[i] > series.root_max;
        if (above_root) {
            bool ok = series.n2[i] == 3 * series.n[i] - 6;
            row["pair_identity"] = ok;
            pair_identity = pair_identity && ok;
        }
        if (i > 0)
            monotone = monotone && series.n[i] >= series.n[i - 1] &&
                       series.n2[i] >= series.n2[i - 1] && series.pi[i] >= series.pi[i - 1] &&
                       series.pi2[i] >= series.pi2[i - 1];
        rows.push_back(row);
    }
    j["counts"] = rows;
    j["invariants"] = {{"pair_identity", pair_identity},
                       {"monotone", monotone},
                       {"pi2_le_3pi", [&] {
                            for (std::size_t i = 0; i < series.size(); ++i)
                                if (series.pi2[i] > 3 * series.pi[i]) return false;
                            return true;
                        }()}};

    if (fit) {
        j["fit"] = {{"alpha_hat", fit->alpha_hat},
                    {"c_hat", fit->c_hat},
                    {"rms_residual", fit->rms_residual},
                    {"points", fit->points},
                    {"alpha_reference", kResidualDimension},
                    {"alpha_deviation", fit->alpha_hat - kResidualDimension}};
    }
    if (ratios) {
        nlohmann::json rr = nlohmann::json::array();
        for (const RatioRow& r : *ratios)
            rr.push_back({{"T", json_int(r.threshold)},
                          {"pi_ratio", r.pi_ratio},
                          {"pi2_ratio", r.pi2_ratio}});
        j["prime_ratios"] = rr;
    }
    if (!extra_json.empty()) j["extra"] = nlohmann::json::parse(extra_json);
    return j.dump(2);
}

}  // namespace apollo
