#include "dsim/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "dsim/rng.hpp"

namespace dsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

bool parse_double(const std::string& cell, double* out) {
  if (cell.empty()) return false;
  const char* begin = cell.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end != begin + cell.size()) return false;
  if (!std::isfinite(value)) return false;
  *out = value;
  return true;
}

std::vector<std::vector<std::string>> read_cells(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw std::invalid_argument("empty file: " + path);
  return rows;
}

// A header is a first row whose every cell is non-empty and non-numeric;
// a mixed row is data and any bad cell in it is reported as a parse error.
bool looks_like_header(const std::vector<std::string>& row) {
  double ignored;
  for (const auto& cell : row) {
    if (cell.empty() || parse_double(cell, &ignored)) return false;
  }
  return true;
}

struct ParsedCsv {
  Matrix features;
  std::vector<std::string> raw_labels;  // empty string = blank cell
  int columns = 0;
};

ParsedCsv parse_csv(const std::string& path, std::optional<int> label_column,
                    bool allow_blank_labels) {
  auto rows = read_cells(path);
  std::size_t first = looks_like_header(rows.front()) ? 1 : 0;
  if (first >= rows.size()) throw std::invalid_argument("no data rows in " + path);

  const int columns = static_cast<int>(rows[first].size());
  if (label_column && (*label_column < 0 || *label_column >= columns))
    throw std::invalid_argument("label column out of range");
  const int d = columns - (label_column ? 1 : 0);
  if (d < 1) throw std::invalid_argument("no feature columns in " + path);

  ParsedCsv out;
  out.columns = columns;
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size() - first);
  out.features.resize(n, d);
  out.raw_labels.reserve(label_column ? n : 0);

  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[first + r];
    if (static_cast<int>(row.size()) != columns) {
      throw std::invalid_argument("row " + std::to_string(first + r + 1) + " has " +
                                  std::to_string(row.size()) + " columns, expected " +
                                  std::to_string(columns));
    }
    Eigen::Index feature = 0;
    for (int col = 0; col < columns; ++col) {
      if (label_column && col == *label_column) {
        if (row[col].empty() && !allow_blank_labels)
          throw std::invalid_argument("blank label at row " + std::to_string(first + r + 1));
        out.raw_labels.push_back(row[col]);
        continue;
      }
      double value;
      if (!parse_double(row[col], &value)) {
        throw std::invalid_argument("parse error at row " + std::to_string(first + r + 1) +
                                    ", column " + std::to_string(col + 1) + ": '" +
                                    row[col] + "'");
      }
      out.features(r, feature++) = value;
    }
  }
  return out;
}

// Dense remap of label keys to 1..c in first-appearance order; "" stays 0.
std::pair<std::vector<int>, int> densify(const std::vector<std::string>& raw) {
  std::unordered_map<std::string, int> ids;
  std::vector<int> labels(raw.size(), 0);
  int next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].empty()) continue;
    auto [it, inserted] = ids.emplace(raw[i], next + 1);
    if (inserted) ++next;
    labels[i] = it->second;
  }
  return {labels, next};
}

}  // namespace

CsvData load_csv(const std::string& path, std::optional<int> label_column) {
  auto parsed = parse_csv(path, label_column, /*allow_blank_labels=*/false);
  CsvData out;
  out.data.points = std::move(parsed.features);
  if (label_column) {
    auto [labels, c] = densify(parsed.raw_labels);
    out.labels = Labeling{std::move(labels), c};
  }
  return out;
}

SslCsvData load_ssl_csv(const std::string& path, int label_column) {
  auto parsed = parse_csv(path, label_column, /*allow_blank_labels=*/true);
  auto [labels, c] = densify(parsed.raw_labels);
  return SslCsvData{Dataset{std::move(parsed.features)}, std::move(labels), c};
}

void write_csv(const std::string& path, const Dataset& data, const Labeling* labels) {
  if (labels && labels->size() != data.size())
    throw std::invalid_argument("label count does not match dataset size");
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  for (Eigen::Index j = 0; j < data.dim(); ++j) out << (j ? ",f" : "f") << j + 1;
  if (labels) out << ",label";
  out << "\n";
  char buffer[64];
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", data.points(i, j));
      out << (j ? "," : "") << buffer;
    }
    if (labels) out << "," << labels->labels[static_cast<std::size_t>(i)];
    out << "\n";
  }
}

Dataset standardize(const Dataset& data) {
  if (data.size() < 2) throw std::invalid_argument("standardize needs at least 2 rows");
  Dataset out;
  out.points = data.points;
  const double n = static_cast<double>(data.size());
  for (Eigen::Index j = 0; j < data.dim(); ++j) {
    const double mean = out.points.col(j).mean();
    out.points.col(j).array() -= mean;
    const double variance = out.points.col(j).squaredNorm() / n;
    if (variance > 0.0) out.points.col(j) /= std::sqrt(variance);
  }
  return out;
}

LabeledDataset generate_blobs(std::uint64_t seed, int n_per_class, int c, int d,
                              double separation, double sigma) {
  if (n_per_class < 1 || c < 1 || d < 1)
    throw std::invalid_argument("generate_blobs: counts must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("generate_blobs: sigma must be > 0");
  Rng rng(seed);
  LabeledDataset out;
  const Eigen::Index n = static_cast<Eigen::Index>(n_per_class) * c;
  out.data.points.resize(n, d);
  out.labels.labels.reserve(static_cast<std::size_t>(n));
  out.labels.num_classes = c;
  Eigen::Index row = 0;
  for (int k = 0; k < c; ++k) {
    const double center = k * separation;  // along the first coordinate
    for (int i = 0; i < n_per_class; ++i, ++row) {
      for (int j = 0; j < d; ++j)
        out.data.points(row, j) = (j == 0 ? center : 0.0) + sigma * rng.normal();
      out.labels.labels.push_back(k + 1);
    }
  }
  return out;
}

LabeledDataset generate_two_moons(std::uint64_t seed, int n, double noise) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("generate_two_moons: n must be even and >= 2");
  if (noise < 0.0) throw std::invalid_argument("generate_two_moons: noise must be >= 0");
  constexpr double kPi = 3.14159265358979323846;
  Rng rng(seed);
  const int half = n / 2;
  LabeledDataset out;
  out.data.points.resize(n, 2);
  out.labels.labels.assign(static_cast<std::size_t>(n), 1);
  out.labels.num_classes = 2;
  for (int i = 0; i < half; ++i) {
    const double t = half == 1 ? 0.0 : kPi * i / (half - 1);
    out.data.points(i, 0) = std::cos(t) + noise * rng.normal();
    out.data.points(i, 1) = std::sin(t) + noise * rng.normal();
    out.data.points(half + i, 0) = 1.0 - std::cos(t) + noise * rng.normal();
    out.data.points(half + i, 1) = 0.5 - std::sin(t) + noise * rng.normal();
    out.labels.labels[static_cast<std::size_t>(half + i)] = 2;
  }
  return out;
}

}  // namespace dsim
