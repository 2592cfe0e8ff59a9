#include "frullani/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace frullani::io {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        std::string available;
        for (const auto& h : header) {
            if (!available.empty()) available += ", ";
            available += h;
        }
        throw std::runtime_error("column '" + name +
                                 "' not found; available columns: " +
                                 available);
    }
    return static_cast<std::size_t>(it - header.begin());
}

double parse_number(const std::string& field, std::size_t row,
                    const std::string& col) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("row " + std::to_string(row) +
                                 ": cannot parse '" + field + "' in column '" +
                                 col + "'");
    }
}

}  // namespace

std::size_t SurvivalDataset::event_count() const {
    std::size_t n = 0;
    for (const auto& obs : observations) n += obs.event ? 1 : 0;
    return n;
}

std::string SurvivalDataset::summary() const {
    std::string s = std::to_string(observations.size()) + " observations, " +
                    std::to_string(event_count()) + " events";
    if (!covariate_cols.empty()) {
        s += ", covariates:";
        for (const auto& c : covariate_cols) s += " " + c;
    }
    return s;
}

SurvivalDataset load_dataset(const std::string& path,
                             const std::string& time_col,
                             const std::string& status_col,
                             const std::vector<std::string>& covariate_cols) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty file: " + path);
    const auto header = split_csv(line);
    const std::size_t t_idx = find_column(header, time_col);
    const std::size_t s_idx = find_column(header, status_col);
    std::vector<std::size_t> c_idx;
    for (const auto& c : covariate_cols) c_idx.push_back(find_column(header, c));

    SurvivalDataset ds;
    ds.source = path;
    ds.time_col = time_col;
    ds.status_col = status_col;
    ds.covariate_cols = covariate_cols;

    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw std::runtime_error("row " + std::to_string(row) + ": has " +
                                     std::to_string(fields.size()) +
                                     " fields, header has " +
                                     std::to_string(header.size()));
        inf::Observation obs;
        obs.time = parse_number(fields[t_idx], row, time_col);
        if (!(obs.time > 0.0))
            throw std::runtime_error("row " + std::to_string(row) +
                                     ": nonpositive time " +
                                     fields[t_idx]);
        const double status = parse_number(fields[s_idx], row, status_col);
        if (status != 0.0 && status != 1.0)
            throw std::runtime_error("row " + std::to_string(row) +
                                     ": status must be 0 or 1, got " +
                                     fields[s_idx]);
        obs.event = status == 1.0;
        for (std::size_t k = 0; k < c_idx.size(); ++k)
            obs.covariates.push_back(
                parse_number(fields[c_idx[k]], row, covariate_cols[k]));
        ds.observations.push_back(std::move(obs));
    }
    if (ds.observations.empty())
        throw std::runtime_error("no data rows in " + path);
    return ds;
}

}  // namespace frullani::io
