#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace simgen::pipelines {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonContiguousDates : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NegativeCaseCount : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RealSeries {
    std::string first_date;  // ISO-8601
    std::vector<double> values;
};

/// Parse a `date,value` CSV (ISO-8601 dates, optional header). Dates must be
/// consecutive calendar days; values must be nonnegative.
RealSeries ingest_real_csv(const std::filesystem::path& path);

}  // namespace simgen::pipelines
