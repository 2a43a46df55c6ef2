#pragma once

#include <filesystem>
#include <stdexcept>

#include "simgen/datagen/generate.hpp"

namespace simgen::datagen {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SchemaMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Layout: <dir>/manifest.json plus one series_<i>.csv per series with
/// header `t,<col1>,<col2>,...`. Floats are written in shortest round-trip
/// form, so write/read is an identity on the data.
void write_csv(const Dataset& dataset, const std::filesystem::path& directory);
Dataset read_csv(const std::filesystem::path& directory);

}  // namespace simgen::datagen
