#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bpps/market_data.hpp"

namespace bpps {

/// An expert could not produce a forecast (insufficient history).
struct SkipForecast : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-asset independent normal predictive distribution of one expert for
/// one period.
struct ExpertForecast {
    std::string expert_id;
    Eigen::Index period = 0;  // panel row index the forecast targets
    Vector mean;              // K
    Vector stdev;             // K, > 0
};

/// Kind + parameters of one forecaster.
struct ExpertSpec {
    enum class Kind { Mean, Ar };
    Kind kind = Kind::Mean;
    int param = 1;  // years for Mean (1 or 3), lag order p for Ar (1..3)

    std::string id() const;
    /// Months of history the expert needs.
    Eigen::Index window_months() const;

    static ExpertSpec parse(const std::string& id);  // "Mean[1]", "AR(2)", ...
    static std::vector<ExpertSpec> default_specs();  // Mean[1], Mean[3], AR(1..3)
};

/// Forecasts for all experts over a contiguous period range; expert order is
/// fixed and defines coefficient indexing downstream.
class ExpertBank {
public:
    ExpertBank(std::vector<ExpertSpec> specs, Eigen::Index first_period, Eigen::Index num_assets);

    Eigen::Index num_experts() const { return static_cast<Eigen::Index>(specs_.size()); }
    Eigen::Index num_assets() const { return num_assets_; }
    Eigen::Index first_period() const { return first_period_; }
    Eigen::Index last_period() const { return first_period_ + static_cast<Eigen::Index>(table_.size()) - 1; }
    const std::vector<ExpertSpec>& specs() const { return specs_; }

    bool has_period(Eigen::Index t) const {
        return t >= first_period_ && t <= last_period();
    }
    /// Forecast of expert j (bank order) for period t.
    const ExpertForecast& at(Eigen::Index t, Eigen::Index j) const;

    void push_period(std::vector<ExpertForecast> forecasts);  // one per expert, bank order

private:
    std::vector<ExpertSpec> specs_;
    Eigen::Index first_period_;
    Eigen::Index num_assets_;
    std::vector<std::vector<ExpertForecast>> table_;  // [t - first][j]
};

/// Floor applied to predictive standard deviations so forecasts stay proper
/// on degenerate windows (monthly return units).
inline constexpr double kStdevFloor = 1e-6;

/// Sample mean / unbiased sample stdev over a 12*years month window.
ExpertForecast mean_expert(const Window& window, int years);

/// Per-asset AR(p) by OLS on a 36-month window; one-step-ahead point
/// forecast; stdev = residual standard deviation. Singular designs fall back
/// to a small ridge on the normal equations.
ExpertForecast ar_expert(const Window& window, int p);

/// Forecasts for every expert at every period in [first_period, last_period].
/// Throws SkipForecast if any expert lacks history anywhere in the range.
ExpertBank build_bank(const ReturnPanel& panel, const std::vector<ExpertSpec>& specs,
                      Eigen::Index first_period, Eigen::Index last_period);

// CSV: date,expert_id,asset_id,mean,stdev
void write_bank_csv(const ExpertBank& bank, const ReturnPanel& panel, std::ostream& out);
ExpertBank load_bank_csv(std::istream& in, const ReturnPanel& panel);

}  // namespace bpps
