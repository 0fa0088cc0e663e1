#include "qi/serialize.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qi::io {

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix: expected a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) throw ParseError("matrix: empty row");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw ParseError("matrix: ragged rows");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& cell = row[k];
      if (!cell.is_array() || cell.size() != 2)
        throw ParseError("matrix: entries must be [re, im] pairs");
      m(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  if (!all_finite(m)) throw ParseError("matrix: non-finite entries");
  return m;
}

json real_matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json instrument_to_json(const Instrument& ins) {
  json outcomes = json::array();
  for (std::size_t n = 0; n < ins.size(); ++n) {
    json kraus = json::array();
    for (const ComplexMatrix& a : ins.op(n).kraus())
      kraus.push_back(matrix_to_json(a));
    outcomes.push_back({{"label", ins.outcomes()[n]}, {"kraus", kraus}});
  }
  return {{"dim", ins.dim()}, {"outcomes", outcomes}};
}

Instrument instrument_from_json(const json& j) {
  if (!j.is_object() || !j.contains("outcomes"))
    throw ParseError("instrument: expected {dim, outcomes}");
  std::vector<std::string> labels;
  std::vector<Operation> ops;
  for (const json& outcome : j.at("outcomes")) {
    labels.push_back(outcome.at("label").get<std::string>());
    std::vector<ComplexMatrix> kraus;
    for (const json& a : outcome.at("kraus"))
      kraus.push_back(matrix_from_json(a));
    ops.emplace_back(std::move(kraus));
  }
  try {
    Instrument ins(std::move(labels), std::move(ops));
    if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != ins.dim())
      throw ParseError("instrument: declared dim does not match matrices");
    return ins;
  } catch (const ValidationError& e) {
    throw ParseError(std::string("instrument: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("instrument: ") + e.what());
  }
}

std::string csv_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number for the error message.
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace qi::io
