#pragma once

// CSV ingestion for survival data: header row, comma separators,
// status column with 1 = event and 0 = right-censored.

#include <cstddef>
#include <string>
#include <vector>

#include "frullani/inference.hpp"

namespace frullani::io {

struct SurvivalDataset {
    std::vector<inf::Observation> observations;
    std::string source;
    std::string time_col, status_col;
    std::vector<std::string> covariate_cols;

    std::size_t size() const { return observations.size(); }
    std::size_t event_count() const;
    std::string summary() const;  // row count, events, covariate block
};

// Errors carry row numbers (1-based, excluding the header) for bad
// values, and list the available columns for name mismatches.
SurvivalDataset load_dataset(const std::string& path,
                             const std::string& time_col,
                             const std::string& status_col,
                             const std::vector<std::string>& covariate_cols);

}  // namespace frullani::io
