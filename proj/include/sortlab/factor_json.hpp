#pragma once

#include <filesystem>
#include <string>

#include "sortlab/factor_analysis.hpp"

namespace sortlab {

/// Serializes every field of the model. Matrices are arrays of rows; doubles
/// are written in shortest round-trip form, so parsing yields the same bits.
std::string factor_model_to_json(const FactorModel& fm);

/// Throws FormatError when the text is not a well-formed factor model.
FactorModel factor_model_from_json(const std::string& text);

void write_factor_json(const FactorModel& fm, const std::filesystem::path& path);
FactorModel read_factor_json(const std::filesystem::path& path);

}  // namespace sortlab
