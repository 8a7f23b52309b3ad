#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "horizon/outcome.hpp"

namespace horizon {

/// A finite table of dichotomic measurement outcomes: row n holds the answers
/// measurement n gives on every state k. Entries are +1 or -1 only.
class MeasurementTable {
 public:
  using Matrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

  /// Validates that the matrix is nonempty and every entry is +1 or -1;
  /// throws std::invalid_argument otherwise.
  explicit MeasurementTable(Matrix entries);

  static MeasurementTable from_rows(const std::vector<std::vector<int>>& rows);

  int measurement_count() const { return static_cast<int>(entries_.rows()); }
  int state_count() const { return static_cast<int>(entries_.cols()); }
  bool square() const { return entries_.rows() == entries_.cols(); }

  /// 1-based lookup; throws std::out_of_range naming the offending index.
  Outcome outcome(int measurement, int state) const;

  /// 1-based row access; throws std::out_of_range.
  Eigen::RowVectorXi row(int measurement) const;

  const Matrix& entries() const { return entries_; }

  friend bool operator==(const MeasurementTable& a, const MeasurementTable& b) {
    return a.entries_.rows() == b.entries_.rows() &&
           a.entries_.cols() == b.entries_.cols() && a.entries_ == b.entries_;
  }

 private:
  Matrix entries_;
};

/// How a derived measurement was built from table rows. Kept as a value-type
/// expression tree so results can be re-evaluated against any table of the
/// same width.
struct Provenance {
  enum class Op : std::uint8_t { base, negation, xor_op, and_op, or_op, diagonal };

  Op op = Op::base;
  int base_row = 0;  // 1-based, meaningful for Op::base only
  std::vector<Provenance> children;

  static Provenance base(int row) { return {Op::base, row, {}}; }
  static Provenance unary(Op op, Provenance child);
  static Provenance binary(Op op, Provenance left, Provenance right);

  std::string to_string() const;
};

/// Row vector of +/-1 answers together with the expression that produced it.
struct DerivedMeasurement {
  Eigen::VectorXi outcomes;
  Provenance provenance;

  Outcome outcome(int state) const;  // 1-based, throws std::out_of_range
  int width() const { return static_cast<int>(outcomes.size()); }
};

/// Re-evaluates a provenance expression cell-by-cell against `table`.
/// Throws std::out_of_range when a base row does not exist and
/// std::invalid_argument when a diagonal node is applied to a non-square
/// table.
DerivedMeasurement evaluate(const Provenance& p, const MeasurementTable& table);

/// Pointwise XOR of rows i and j (+1 where the rows differ).
DerivedMeasurement xor_compose(const MeasurementTable& table, int i, int j);
DerivedMeasurement and_compose(const MeasurementTable& table, int i, int j);
DerivedMeasurement or_compose(const MeasurementTable& table, int i, int j);

DerivedMeasurement negate(const DerivedMeasurement& m);

/// The antidiagonal construction: entry k is the negation of table(k, k).
/// Defined for square tables only; throws std::invalid_argument otherwise.
DerivedMeasurement diagonal_measurement(const MeasurementTable& table);

/// First row of `table` equal to `m`, 1-based; absent when none matches.
/// Throws std::invalid_argument when widths differ.
std::optional<int> find_matching_row(const MeasurementTable& table,
                                     const DerivedMeasurement& m);

/// Row-by-row record of the fixed-point argument for one self-map alpha.
struct FixedPointReport {
  struct RowEntry {
    int row = 0;                    // 1-based
    bool matches_derived = false;   // row equals the derived measurement g
    Outcome diagonal_value;         // t(n, n)
    Outcome alpha_of_diagonal;      // alpha(t(n, n))
    bool equation_holds = false;    // t(n, n) == alpha(t(n, n))
  };

  OutcomeMap alpha;
  DerivedMeasurement derived;       // g(k) = alpha(t(k, k))
  std::vector<RowEntry> rows;
  std::optional<int> matching_row;  // first row equal to `derived`
  bool alpha_has_fixed_point = false;

  /// True exactly when no row realises `derived` and alpha is fixed-point
  /// free: the table then certifies that alpha's diagonal escapes it.
  bool contradiction_certified = false;
};

/// Builds g(k) = alpha(t(k, k)) and checks, for every row, whether it equals
/// g and whether the diagonal equation t(n, n) == alpha(t(n, n)) holds.
/// A row can equal g only if alpha has a fixed point; the report records the
/// evidence. Square tables only.
FixedPointReport lawvere_check(const MeasurementTable& table,
                               const OutcomeMap& alpha);

/// Grows an n x n table to (n+1) x (n+1): the new row is the negated
/// diagonal of the original table extended by `corner`; the new column's
/// first n entries default to `corner` unless `new_column` provides them.
/// Throws std::invalid_argument for non-square input or wrong column length.
MeasurementTable extend_with_diagonal(
    const MeasurementTable& table, Outcome corner,
    const std::optional<std::vector<Outcome>>& new_column = std::nullopt);

/// Parses either a +/- character grid (one row per line, '#' comments and
/// blank lines skipped) or a JSON array of arrays of +1/-1 entries. The
/// format is sniffed from the first non-space character. Throws ParseError
/// with a line or element diagnostic.
MeasurementTable parse_table(const std::string& text,
                             const std::string& origin = "<input>");

/// Renders the table as a +/- grid, one row per line.
std::string format_table(const MeasurementTable& table);

}  // namespace horizon
