#include "bpps/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace bpps {

Date Date::parse(const std::string& ymd) {
    Date d;
    char dash1 = 0, dash2 = 0;
    std::istringstream ss(ymd);
    if (!(ss >> d.year >> dash1 >> d.month >> dash2 >> d.day) || dash1 != '-' || dash2 != '-' ||
        d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
        throw DataError("bad date: '" + ymd + "' (expected YYYY-MM-DD)");
    }
    return d;
}

std::string Date::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

void PriceSeries::validate() const {
    if (dates.size() != prices.size()) {
        throw DataError(asset_id + ": dates/prices length mismatch");
    }
    if (dates.size() < 2) {
        throw DataError(asset_id + ": need at least 2 observations");
    }
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !std::isfinite(prices[i])) {
            throw DataError(asset_id + ": non-positive price at " + dates[i].str());
        }
        if (i > 0 && !(dates[i - 1] < dates[i])) {
            throw DataError(asset_id + ": dates not strictly increasing at " + dates[i].str());
        }
    }
}

std::vector<double> compute_returns(const PriceSeries& series, ReturnMethod method) {
    series.validate();
    std::vector<double> out(series.prices.size() - 1);
    for (std::size_t i = 1; i < series.prices.size(); ++i) {
        double ratio = series.prices[i] / series.prices[i - 1];
        out[i - 1] = method == ReturnMethod::Simple ? ratio - 1.0 : std::log(ratio);
    }
    return out;
}

namespace {

// (year, month) key for calendar alignment.
std::pair<int, int> month_key(const Date& d) { return {d.year, d.month}; }

}  // namespace

ReturnPanel align_panel(const std::vector<PriceSeries>& series_list, ReturnMethod method) {
    if (series_list.size() < 2) {
        throw DataError("align_panel: need at least 2 series");
    }
    for (const auto& s : series_list) s.validate();

    // Common month range across all series. Missing months inside a series
    // are a hard error.
    auto first = month_key(series_list[0].dates.front());
    auto last = month_key(series_list[0].dates.back());
    for (const auto& s : series_list) {
        first = std::max(first, month_key(s.dates.front()));
        last = std::min(last, month_key(s.dates.back()));
    }
    auto months_between = [](std::pair<int, int> a, std::pair<int, int> b) {
        return (b.first - a.first) * 12 + (b.second - a.second);
    };
    if (months_between(first, last) < 1) {
        std::string ids;
        for (const auto& s : series_list) ids += (ids.empty() ? "" : ", ") + s.asset_id;
        throw DataError("align_panel: empty or single-month date intersection across [" + ids + "]");
    }
    const int n_months = months_between(first, last) + 1;

    ReturnPanel panel;
    panel.returns.resize(n_months - 1, static_cast<Eigen::Index>(series_list.size()));
    for (std::size_t col = 0; col < series_list.size(); ++col) {
        const auto& s = series_list[col];
        // Index of `first` month in this series; contiguity checked below.
        std::size_t start = 0;
        while (start < s.dates.size() && month_key(s.dates[start]) < first) ++start;
        if (start + n_months > s.dates.size()) {
            throw DataError("align_panel: " + s.asset_id + " has a gap inside the common range");
        }
        for (int i = 0; i < n_months; ++i) {
            auto expect = first;
            expect.second += i;
            expect.first += (expect.second - 1) / 12;
            expect.second = (expect.second - 1) % 12 + 1;
            if (month_key(s.dates[start + i]) != expect) {
                throw DataError("align_panel: " + s.asset_id + " missing month " +
                                std::to_string(expect.first) + "-" + std::to_string(expect.second));
            }
        }
        PriceSeries trimmed;
        trimmed.asset_id = s.asset_id;
        trimmed.dates.assign(s.dates.begin() + start, s.dates.begin() + start + n_months);
        trimmed.prices.assign(s.prices.begin() + start, s.prices.begin() + start + n_months);
        auto rets = compute_returns(trimmed, method);
        for (int i = 0; i < n_months - 1; ++i) panel.returns(i, col) = rets[i];
        panel.assets.push_back(s.asset_id);
        if (col == 0) {
            panel.dates.assign(trimmed.dates.begin() + 1, trimmed.dates.end());
        }
    }
    return panel;
}

Window slice_window(const ReturnPanel& panel, Eigen::Index t, Eigen::Index months) {
    if (months < 1) throw DataError("slice_window: months must be positive");
    if (t - months < 0 || t > panel.periods()) {
        throw DataError("slice_window: insufficient history (t=" + std::to_string(t) +
                        ", months=" + std::to_string(months) + ")");
    }
    return Window{&panel, t, months};
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

std::vector<PriceSeries> load_price_csv(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(origin + ": empty file");
    auto header = split_csv_line(line);
    if (header.size() != 3 || trim(header[0]) != "date" || trim(header[1]) != "asset_id" ||
        trim(header[2]) != "price") {
        throw DataError(origin + ": expected header 'date,asset_id,price'");
    }
    // asset -> month -> (date, price); the last observation per month wins.
    std::map<std::string, std::map<std::pair<int, int>, std::pair<Date, double>>> by_asset;
    std::vector<std::string> order;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 3) {
            throw DataError(origin + ":" + std::to_string(lineno) + ": expected 3 columns");
        }
        Date d = Date::parse(trim(cells[0]));
        std::string asset = trim(cells[1]);
        double price = 0.0;
        try {
            price = std::stod(trim(cells[2]));
        } catch (const std::exception&) {
            throw DataError(origin + ":" + std::to_string(lineno) + ": bad price '" + cells[2] + "'");
        }
        if (!(price > 0.0)) {
            throw DataError(origin + ":" + std::to_string(lineno) + ": non-positive price");
        }
        if (!by_asset.count(asset)) order.push_back(asset);
        auto& months = by_asset[asset];
        auto key = std::pair<int, int>{d.year, d.month};
        auto it = months.find(key);
        if (it == months.end() || it->second.first < d) {
            months[key] = {d, price};
        }
    }
    std::vector<PriceSeries> out;
    for (const auto& asset : order) {
        PriceSeries s;
        s.asset_id = asset;
        for (const auto& [key, obs] : by_asset[asset]) {
            s.dates.push_back(obs.first);
            s.prices.push_back(obs.second);
        }
        s.validate();
        out.push_back(std::move(s));
    }
    if (out.empty()) throw DataError(origin + ": no data rows");
    return out;
}

std::vector<PriceSeries> load_price_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return load_price_csv(in, path);
}

std::vector<PriceSeries> load_price_files(const std::vector<std::string>& paths) {
    std::vector<PriceSeries> all;
    for (const auto& path : paths) {
        auto part = load_price_file(path);
        for (auto& s : part) {
            for (const auto& existing : all) {
                if (existing.asset_id == s.asset_id) {
                    throw DataError("asset " + s.asset_id + " appears in more than one file (" +
                                    path + ")");
                }
            }
            all.push_back(std::move(s));
        }
    }
    return all;
}

void write_panel_csv(const ReturnPanel& panel, std::ostream& out) {
    out << "date";
    for (const auto& a : panel.assets) out << "," << a;
    out << "\n";
    out.precision(17);
    for (Eigen::Index t = 0; t < panel.periods(); ++t) {
        out << panel.dates[t].str();
        for (Eigen::Index k = 0; k < panel.num_assets(); ++k) out << "," << panel.returns(t, k);
        out << "\n";
    }
}

}  // namespace bpps
