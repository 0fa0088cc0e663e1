#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "qi/instruments.hpp"

namespace qi::io {

using json = nlohmann::json;

/// Wire format for operators: row-major nested arrays of [re, im] pairs.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json real_matrix_to_json(const Eigen::MatrixXd& m);

/// {"dim": d, "outcomes": [{"label": ..., "kraus": [matrix, ...]}, ...]}
json instrument_to_json(const Instrument& ins);
Instrument instrument_from_json(const json& j);

/// Fixed 17-significant-digit rendering used for CSV cells.
std::string csv_double(double value);

/// Read/parse helpers that map failures onto the CLI error contract.
json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qi::io
