#pragma once

// Text interchange for character tables, permutation-group inputs, and
// matrix-representation inputs, plus the shared cyclotomic expression parser.
// All formats are line oriented, deterministic, and round-trip exactly.

#include <string>
#include <vector>

#include "twirl/chartab.hpp"
#include "twirl/cyclotomic.hpp"
#include "twirl/permgroup.hpp"
#include "twirl/rational.hpp"

namespace twirl {

// Parses one cyclotomic expression, e.g. "E(5)+E(5)^4", "-3/2",
// "2*E(8)^3 - E(8)".  Grammar:
//   expr     := ['-'] term (('+'|'-') term)*
//   term     := [rational '*'] atom ['^' int] | rational
//   atom     := 'E(' posint ')'
//   rational := int ['/' posint]
// Whitespace is insignificant.  Throws ParseError with a 1-based column.
Cyclotomic parse_cyclotomic(const std::string& text);

// A parsed character table plus file-level metadata.
struct TableDocument {
  CharacterTable table;
  std::vector<std::string> aliases;  // optional "alias <name>" lines
  bool validated = true;             // false when loaded with validation off
};

// Parses the CTBL v1 format.  With validate_table set, the exact
// orthogonality relations are checked on load (ValidationError on failure);
// otherwise the document is marked unvalidated.
TableDocument parse_table(const std::string& text, bool validate_table = true);

// Canonical CTBL v1 serialization; an empty group name becomes "unnamed".
std::string write_table(const CharacterTable& t);

// Parses the PERMGROUP v1 format.
PermGroup parse_permgroup(const std::string& text);

// Canonical PERMGROUP v1 serialization.
std::string write_permgroup(const PermGroup& g);

// A matrix representation given by generator matrices over a cyclotomic
// field: the raw content of a MATREP v1 file.
struct MatRep {
  std::string name;
  int dim = 0;          // matrix dimension q
  Integer order;        // asserted group order (checked downstream)
  std::vector<std::vector<std::vector<Cyclotomic>>> generators;  // [gen][row][col]
};

// Parses the MATREP v1 format.
MatRep parse_matrep(const std::string& text);

// Canonical MATREP v1 serialization.
std::string write_matrep(const MatRep& m);

// Input-format detection by magic first line.
enum class DocKind { Table, PermGroup, MatRep };
DocKind sniff_format(const std::string& text);

// Reads a whole file; throws Error when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace twirl
