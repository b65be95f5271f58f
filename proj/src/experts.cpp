#include "bpps/experts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace bpps {

std::string ExpertSpec::id() const {
    std::ostringstream ss;
    if (kind == Kind::Mean) {
        ss << "Mean[" << param << "]";
    } else {
        ss << "AR(" << param << ")";
    }
    return ss.str();
}

Eigen::Index ExpertSpec::window_months() const {
    return kind == Kind::Mean ? 12 * param : 36;
}

ExpertSpec ExpertSpec::parse(const std::string& id) {
    ExpertSpec s;
    int param = 0;
    if (std::sscanf(id.c_str(), "Mean[%d]", &param) == 1) {
        s.kind = Kind::Mean;
    } else if (std::sscanf(id.c_str(), "AR(%d)", &param) == 1) {
        s.kind = Kind::Ar;
    } else {
        throw DataError("unknown expert id '" + id + "'");
    }
    s.param = param;
    if (s.kind == Kind::Mean && param != 1 && param != 3)
        throw DataError("Mean expert supports 1 or 3 years, got " + id);
    if (s.kind == Kind::Ar && (param < 1 || param > 3))
        throw DataError("AR expert supports p in 1..3, got " + id);
    return s;
}

std::vector<ExpertSpec> ExpertSpec::default_specs() {
    return {{Kind::Mean, 1}, {Kind::Mean, 3}, {Kind::Ar, 1}, {Kind::Ar, 2}, {Kind::Ar, 3}};
}

ExpertBank::ExpertBank(std::vector<ExpertSpec> specs, Eigen::Index first_period,
                       Eigen::Index num_assets)
    : specs_(std::move(specs)), first_period_(first_period), num_assets_(num_assets) {
    if (specs_.empty()) throw DataError("ExpertBank: need at least one expert");
}

const ExpertForecast& ExpertBank::at(Eigen::Index t, Eigen::Index j) const {
    if (!has_period(t)) {
        throw DataError("ExpertBank: no forecasts for period " + std::to_string(t));
    }
    return table_[t - first_period_].at(j);
}

void ExpertBank::push_period(std::vector<ExpertForecast> forecasts) {
    if (static_cast<Eigen::Index>(forecasts.size()) != num_experts()) {
        throw DataError("ExpertBank: wrong forecast count for a period");
    }
    table_.push_back(std::move(forecasts));
}

ExpertForecast mean_expert(const Window& window, int years) {
    const Eigen::Index need = 12 * static_cast<Eigen::Index>(years);
    if (window.length != need) {
        throw SkipForecast("mean_expert: window of " + std::to_string(window.length) +
                           " months, need " + std::to_string(need));
    }
    auto block = window.rows();
    const Eigen::Index n = block.rows();
    ExpertForecast f;
    f.expert_id = ExpertSpec{ExpertSpec::Kind::Mean, years}.id();
    f.period = window.end_index;
    f.mean = block.colwise().mean();
    f.stdev.resize(block.cols());
    for (Eigen::Index k = 0; k < block.cols(); ++k) {
        double ss = (block.col(k).array() - f.mean[k]).square().sum();
        f.stdev[k] = std::max(std::sqrt(ss / static_cast<double>(n - 1)), kStdevFloor);
    }
    return f;
}

ExpertForecast ar_expert(const Window& window, int p) {
    const Eigen::Index n = window.length;
    const Eigen::Index rows = n - p;
    if (rows < p + 2) {
        throw SkipForecast("ar_expert: too few usable rows for AR(" + std::to_string(p) + ")");
    }
    auto block = window.rows();
    ExpertForecast f;
    f.expert_id = ExpertSpec{ExpertSpec::Kind::Ar, p}.id();
    f.period = window.end_index;
    f.mean.resize(block.cols());
    f.stdev.resize(block.cols());
    for (Eigen::Index k = 0; k < block.cols(); ++k) {
        Matrix x(rows, p + 1);
        Vector y(rows);
        for (Eigen::Index r = 0; r < rows; ++r) {
            x(r, 0) = 1.0;
            for (int i = 1; i <= p; ++i) x(r, i) = block(p + r - i, k);
            y[r] = block(p + r, k);
        }
        Matrix xtx = x.transpose() * x;
        Vector xty = x.transpose() * y;
        Eigen::LLT<Matrix> llt(xtx);
        if (llt.info() != Eigen::Success) {
            // Ridge fallback keeps degenerate (e.g. constant) series total.
            xtx.diagonal().array() += 1e-8;
            llt.compute(xtx);
        }
        Vector coef = llt.solve(xty);
        double forecast = coef[0];
        for (int i = 1; i <= p; ++i) forecast += coef[i] * block(n - i, k);
        f.mean[k] = forecast;
        double rss = (y - x * coef).squaredNorm();
        double dof = static_cast<double>(rows - p - 1);
        f.stdev[k] = std::max(std::sqrt(std::max(rss, 0.0) / dof), kStdevFloor);
    }
    return f;
}

namespace {

ExpertForecast run_expert(const ReturnPanel& panel, const ExpertSpec& spec, Eigen::Index t) {
    Window w = slice_window(panel, t, spec.window_months());
    return spec.kind == ExpertSpec::Kind::Mean ? mean_expert(w, spec.param)
                                               : ar_expert(w, spec.param);
}

}  // namespace

ExpertBank build_bank(const ReturnPanel& panel, const std::vector<ExpertSpec>& specs,
                      Eigen::Index first_period, Eigen::Index last_period) {
    Eigen::Index longest = 0;
    for (const auto& s : specs) longest = std::max(longest, s.window_months());
    if (first_period < longest) {
        throw SkipForecast("build_bank: range starts at period " + std::to_string(first_period) +
                           " but the longest expert window needs " + std::to_string(longest) +
                           " months of history");
    }
    if (last_period > panel.periods()) {
        throw DataError("build_bank: range end beyond panel");
    }
    ExpertBank bank(specs, first_period, panel.num_assets());
    for (Eigen::Index t = first_period; t <= last_period; ++t) {
        std::vector<ExpertForecast> row;
        row.reserve(specs.size());
        for (const auto& spec : specs) row.push_back(run_expert(panel, spec, t));
        bank.push_period(std::move(row));
    }
    return bank;
}

void write_bank_csv(const ExpertBank& bank, const ReturnPanel& panel, std::ostream& out) {
    out << "date,expert_id,asset_id,mean,stdev\n";
    out.precision(17);
    for (Eigen::Index t = bank.first_period(); t <= bank.last_period(); ++t) {
        // Period t may be one past the last observed return (pure forecast);
        // reuse the last date with a +1 marker is avoided: dates vector must
        // cover t or we emit the index.
        std::string date = t < panel.periods() ? panel.dates[t].str() : ("t+" + std::to_string(t));
        for (Eigen::Index j = 0; j < bank.num_experts(); ++j) {
            const auto& f = bank.at(t, j);
            for (Eigen::Index k = 0; k < bank.num_assets(); ++k) {
                out << date << "," << f.expert_id << "," << panel.assets[k] << "," << f.mean[k]
                    << "," << f.stdev[k] << "\n";
            }
        }
    }
}

ExpertBank load_bank_csv(std::istream& in, const ReturnPanel& panel) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("bank csv: empty");
    std::map<std::string, Eigen::Index> date_to_period;
    for (Eigen::Index t = 0; t < panel.periods(); ++t) date_to_period[panel.dates[t].str()] = t;
    std::map<std::string, Eigen::Index> asset_to_col;
    for (Eigen::Index k = 0; k < panel.num_assets(); ++k) asset_to_col[panel.assets[k]] = k;

    struct Cell { double mean, stdev; };
    std::map<Eigen::Index, std::map<std::string, std::map<Eigen::Index, Cell>>> cells;
    std::vector<std::string> expert_order;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string date, expert, asset, mean_s, stdev_s;
        std::getline(ss, date, ',');
        std::getline(ss, expert, ',');
        std::getline(ss, asset, ',');
        std::getline(ss, mean_s, ',');
        std::getline(ss, stdev_s, ',');
        Eigen::Index t;
        if (date.rfind("t+", 0) == 0) {
            t = std::stol(date.substr(2));
        } else {
            auto it = date_to_period.find(date);
            if (it == date_to_period.end()) throw DataError("bank csv: unknown date " + date);
            t = it->second;
        }
        auto ac = asset_to_col.find(asset);
        if (ac == asset_to_col.end()) throw DataError("bank csv: unknown asset " + asset);
        if (std::find(expert_order.begin(), expert_order.end(), expert) == expert_order.end())
            expert_order.push_back(expert);
        cells[t][expert][ac->second] = {std::stod(mean_s), std::stod(stdev_s)};
    }
    if (cells.empty()) throw DataError("bank csv: no rows");
    std::vector<ExpertSpec> specs;
    for (const auto& id : expert_order) specs.push_back(ExpertSpec::parse(id));
    Eigen::Index first = cells.begin()->first;
    ExpertBank bank(specs, first, panel.num_assets());
    Eigen::Index expect = first;
    for (const auto& [t, by_expert] : cells) {
        if (t != expect++) throw DataError("bank csv: non-contiguous periods");
        std::vector<ExpertForecast> row;
        for (const auto& id : expert_order) {
            auto it = by_expert.find(id);
            if (it == by_expert.end()) throw DataError("bank csv: missing expert " + id);
            ExpertForecast f;
            f.expert_id = id;
            f.period = t;
            f.mean.resize(panel.num_assets());
            f.stdev.resize(panel.num_assets());
            for (Eigen::Index k = 0; k < panel.num_assets(); ++k) {
                auto cell = it->second.find(k);
                if (cell == it->second.end()) throw DataError("bank csv: missing asset cell");
                f.mean[k] = cell->second.mean;
                f.stdev[k] = cell->second.stdev;
                if (!(f.stdev[k] > 0.0)) throw DataError("bank csv: non-positive stdev");
            }
            row.push_back(std::move(f));
        }
        bank.push_period(std::move(row));
    }
    return bank;
}

}  // namespace bpps
