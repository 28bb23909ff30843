// params_io.hpp — JSON parameter files
//
// Keys: "v", "delta", "lambda", "omega", "gamma", "cutoff", "temperature".
// Missing keys keep their defaults; unknown keys are rejected. "cutoff" may
// be null or the string "inf" to disable the exponential cutoff.

#pragma once

#include <filesystem>
#include <string>

#include "rcpt/model.hpp"

namespace rcpt::model {

// Throws ParameterError with the parse location on malformed input.
ModelParams params_from_json(const std::string& text, ModelParams base = {});
ModelParams load_params(const std::filesystem::path& file, ModelParams base = {});

std::string params_to_json(const ModelParams& p, int indent = 2);

} // namespace rcpt::model
