#include "jaccard/matrix.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace jaccard {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \r");
  return s.substr(first, last - first + 1);
}

bool is_cell(const std::string& token) {
  return token == "0" || token == "1";
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> tokens;
  std::string token;
  std::istringstream stream(line);
  while (std::getline(stream, token, delimiter)) {
    tokens.push_back(trim(token));
  }
  if (!line.empty() && line.back() == delimiter) tokens.push_back("");
  return tokens;
}

void check_unique(const std::vector<std::string>& labels, const char* kind) {
  std::unordered_set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw ValidationError(std::string("duplicate ") + kind + " label '" +
                            label + "'");
    }
  }
}

}  // namespace

PresenceAbsenceMatrix PresenceAbsenceMatrix::transposed() const {
  PresenceAbsenceMatrix out;
  out.row_labels = col_labels;
  out.col_labels = row_labels;
  out.rows.reserve(m());
  for (std::size_t c = 0; c < m(); ++c) {
    std::vector<std::uint8_t> bits(n());
    for (std::size_t r = 0; r < n(); ++r) bits[r] = rows[r][c];
    out.rows.emplace_back(std::move(bits));
  }
  return out;
}

PresenceAbsenceMatrix parse_matrix(std::istream& in,
                                   const ParseOptions& opts) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ValidationError("matrix file is empty");

  const char delimiter =
      opts.delimiter != 0
          ? opts.delimiter
          : (lines.front().find('\t') != std::string::npos ? '\t' : ',');

  std::vector<std::vector<std::string>> table;
  table.reserve(lines.size());
  for (const auto& l : lines) table.push_back(split(l, delimiter));

  auto all_cells_from = [&](const std::vector<std::string>& row,
                            std::size_t start) {
    for (std::size_t c = start; c < row.size(); ++c) {
      if (!is_cell(row[c])) return false;
    }
    return true;
  };

  using Presence = ParseOptions::Presence;
  bool has_header;
  switch (opts.header) {
    case Presence::yes:
      has_header = true;
      break;
    case Presence::no:
      has_header = false;
      break;
    default:
      // A data row has nothing but 0/1 cells past the (possible) label.
      has_header = !all_cells_from(table.front(), 1);
      break;
  }
  if (has_header && table.size() < 2) {
    throw ValidationError("matrix has a header row but no data rows");
  }

  const std::size_t first_data = has_header ? 1 : 0;
  bool has_row_labels;
  switch (opts.row_labels) {
    case Presence::yes:
      has_row_labels = true;
      break;
    case Presence::no:
      has_row_labels = false;
      break;
    default:
      has_row_labels = !is_cell(table[first_data].front());
      break;
  }

  const std::size_t cell_start = has_row_labels ? 1 : 0;
  if (table[first_data].size() <= cell_start) {
    throw ValidationError("matrix has no data columns");
  }
  const std::size_t m = table[first_data].size() - cell_start;

  PresenceAbsenceMatrix matrix;
  if (has_header) {
    const auto& header = table.front();
    // The header may or may not carry a corner cell over the label column.
    std::size_t offset;
    if (header.size() == m + 1) {
      offset = 1;
    } else if (header.size() == m) {
      offset = 0;
    } else {
      throw ValidationError("header has " + std::to_string(header.size()) +
                            " fields but rows have " + std::to_string(m) +
                            " data columns");
    }
    matrix.col_labels.assign(header.begin() + offset, header.end());
  } else {
    for (std::size_t c = 0; c < m; ++c) {
      matrix.col_labels.push_back("u" + std::to_string(c + 1));
    }
  }

  for (std::size_t r = first_data; r < table.size(); ++r) {
    const auto& row = table[r];
    const std::string row_name =
        has_row_labels ? row.front() : "s" + std::to_string(r - first_data + 1);
    if (row.size() != m + cell_start) {
      throw ValidationError("row '" + row_name + "' has " +
                            std::to_string(row.size() - cell_start) +
                            " columns, expected " + std::to_string(m));
    }
    std::vector<std::uint8_t> bits(m);
    for (std::size_t c = 0; c < m; ++c) {
      const std::string& cell = row[c + cell_start];
      if (!is_cell(cell)) {
        throw ValidationError("non-binary cell '" + cell + "' at row '" +
                              row_name + "', column '" +
                              matrix.col_labels[c] + "'");
      }
      bits[c] = cell == "1" ? 1 : 0;
    }
    matrix.row_labels.push_back(row_name);
    matrix.rows.emplace_back(std::move(bits));
  }

  check_unique(matrix.row_labels, "row");
  check_unique(matrix.col_labels, "column");
  return matrix;
}

PresenceAbsenceMatrix parse_matrix_file(const std::string& path,
                                        const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file '" + path + "'");
  return parse_matrix(in, opts);
}

void write_matrix(std::ostream& out, const PresenceAbsenceMatrix& matrix,
                  char delimiter) {
  out << "id";
  for (const auto& label : matrix.col_labels) out << delimiter << label;
  out << '\n';
  for (std::size_t r = 0; r < matrix.n(); ++r) {
    out << matrix.row_labels[r];
    for (std::size_t c = 0; c < matrix.m(); ++c) {
      out << delimiter << static_cast<int>(matrix.rows[r][c]);
    }
    out << '\n';
  }
}

}  // namespace jaccard
