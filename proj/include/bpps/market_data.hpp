#pragma once

#include <Eigen/Dense>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpps/numerics.hpp"

namespace bpps {

/// Bad or inconsistent input data (non-positive price, empty date
/// intersection, malformed CSV, ...).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Calendar date, comparable by (year, month, day).
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    static Date parse(const std::string& ymd);  // "YYYY-MM-DD"
    std::string str() const;

    friend auto operator<=>(const Date&, const Date&) = default;
};

/// Price history of one asset sampled at month ends.
struct PriceSeries {
    std::string asset_id;
    std::vector<Date> dates;   // strictly increasing
    std::vector<double> prices;  // > 0, same length as dates

    /// Throws DataError on any invariant violation.
    void validate() const;
};

enum class ReturnMethod { Simple, Log };

/// Aligned monthly return matrix: T periods x K assets.
struct ReturnPanel {
    std::vector<Date> dates;          // length T, return dates (period ends)
    std::vector<std::string> assets;  // K ids, column order
    Matrix returns;                   // T x K

    Eigen::Index periods() const { return returns.rows(); }
    Eigen::Index num_assets() const { return returns.cols(); }
};

/// Strictly-past view into a panel: rows [end_index - length, end_index).
struct Window {
    const ReturnPanel* panel = nullptr;
    Eigen::Index end_index = 0;  // period t; the window never includes row t
    Eigen::Index length = 0;

    Eigen::Index num_assets() const { return panel->num_assets(); }
    /// months x K block of past returns.
    Eigen::Block<const Matrix> rows() const {
        return panel->returns.block(end_index - length, 0, length, panel->num_assets());
    }
};

/// return_t = p_t/p_{t-1} - 1 (simple) or ln(p_t/p_{t-1}) (log).
std::vector<double> compute_returns(const PriceSeries& series,
                                    ReturnMethod method = ReturnMethod::Simple);

/// Restrict all series to their common date range and build the panel.
/// Column order matches the input order. Throws DataError when the
/// intersection has fewer than 2 months.
ReturnPanel align_panel(const std::vector<PriceSeries>& series_list,
                        ReturnMethod method = ReturnMethod::Simple);

/// View of rows [t - months, t). Throws DataError on insufficient history.
Window slice_window(const ReturnPanel& panel, Eigen::Index t, Eigen::Index months);

// ---------------------------------------------------------------------------
// CSV I/O
// ---------------------------------------------------------------------------

/// Parse a long-format price CSV with header `date,asset_id,price`.
/// Rows may carry daily data; the last observation inside each calendar
/// month is kept as that month's price (month-end sampling).
std::vector<PriceSeries> load_price_csv(std::istream& in, const std::string& origin = "<stream>");
std::vector<PriceSeries> load_price_file(const std::string& path);

/// Merge series from several files; series with the same asset_id must not
/// appear in more than one file.
std::vector<PriceSeries> load_price_files(const std::vector<std::string>& paths);

/// `date,asset_1,...,asset_K` returns dump.
void write_panel_csv(const ReturnPanel& panel, std::ostream& out);

}  // namespace bpps
