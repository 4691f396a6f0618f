#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jaccard/types.hpp"

namespace jaccard {

// n species (rows) observed across m biogeographic units (columns).
struct PresenceAbsenceMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<BinaryVector> rows;

  std::size_t n() const { return rows.size(); }
  std::size_t m() const { return rows.empty() ? 0 : rows.front().size(); }

  // Swap species/unit orientation (for unit-vs-unit comparisons).
  PresenceAbsenceMatrix transposed() const;
};

struct ParseOptions {
  enum class Presence { autodetect, yes, no };
  // 0 = detect from the first line (tab wins over comma).
  char delimiter = 0;
  Presence header = Presence::autodetect;
  Presence row_labels = Presence::autodetect;
};

// Reads a delimited 0/1 matrix. Errors name the offending cell by row and
// column; ragged rows and duplicate labels are rejected. Missing labels are
// generated as s1..sn / u1..um.
PresenceAbsenceMatrix parse_matrix(std::istream& in,
                                   const ParseOptions& opts = {});
PresenceAbsenceMatrix parse_matrix_file(const std::string& path,
                                        const ParseOptions& opts = {});

// Writes header + labeled rows; parse_matrix reads the result back
// identically.
void write_matrix(std::ostream& out, const PresenceAbsenceMatrix& matrix,
                  char delimiter = ',');

}  // namespace jaccard
