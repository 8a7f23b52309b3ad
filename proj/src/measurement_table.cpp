#include "horizon/measurement_table.hpp"

#include <cctype>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "horizon/io.hpp"

namespace horizon {

namespace {

void check_row_index(const MeasurementTable& t, int n) {
  if (n < 1 || n > t.measurement_count())
    throw std::out_of_range("measurement index " + std::to_string(n) +
                            " out of range 1.." +
                            std::to_string(t.measurement_count()));
}

void check_state_index(const MeasurementTable& t, int k) {
  if (k < 1 || k > t.state_count())
    throw std::out_of_range("state index " + std::to_string(k) +
                            " out of range 1.." +
                            std::to_string(t.state_count()));
}

void require_square(const MeasurementTable& t, const char* op) {
  if (!t.square())
    throw std::invalid_argument(
        std::string(op) + " requires a square table, got " +
        std::to_string(t.measurement_count()) + "x" +
        std::to_string(t.state_count()));
}

}  // namespace

MeasurementTable::MeasurementTable(Matrix entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.cols() == 0)
    throw std::invalid_argument("measurement table must be nonempty");
  for (Eigen::Index r = 0; r < entries_.rows(); ++r)
    for (Eigen::Index c = 0; c < entries_.cols(); ++c)
      if (entries_(r, c) != 1 && entries_(r, c) != -1)
        throw std::invalid_argument(
            "table entry at (" + std::to_string(r + 1) + "," +
            std::to_string(c + 1) + ") must be +1 or -1, got " +
            std::to_string(entries_(r, c)));
}

MeasurementTable MeasurementTable::from_rows(
    const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("measurement table must be nonempty");
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size())
      throw std::invalid_argument("row " + std::to_string(r + 1) + " has " +
                                  std::to_string(rows[r].size()) +
                                  " entries, expected " +
                                  std::to_string(rows.front().size()));
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
  }
  return MeasurementTable(std::move(m));
}

Outcome MeasurementTable::outcome(int measurement, int state) const {
  check_row_index(*this, measurement);
  check_state_index(*this, state);
  return outcome_from_int(entries_(measurement - 1, state - 1));
}

Eigen::RowVectorXi MeasurementTable::row(int measurement) const {
  check_row_index(*this, measurement);
  return entries_.row(measurement - 1);
}

Provenance Provenance::unary(Op op, Provenance child) {
  Provenance p;
  p.op = op;
  p.children.push_back(std::move(child));
  return p;
}

Provenance Provenance::binary(Op op, Provenance left, Provenance right) {
  Provenance p;
  p.op = op;
  p.children.push_back(std::move(left));
  p.children.push_back(std::move(right));
  return p;
}

std::string Provenance::to_string() const {
  switch (op) {
    case Op::base:
      return "m" + std::to_string(base_row);
    case Op::negation:
      return "NOT(" + children.at(0).to_string() + ")";
    case Op::xor_op:
      return "XOR(" + children.at(0).to_string() + "," +
             children.at(1).to_string() + ")";
    case Op::and_op:
      return "AND(" + children.at(0).to_string() + "," +
             children.at(1).to_string() + ")";
    case Op::or_op:
      return "OR(" + children.at(0).to_string() + "," +
             children.at(1).to_string() + ")";
    case Op::diagonal:
      return "DIAG";
  }
  throw std::invalid_argument("unknown provenance operator");
}

Outcome DerivedMeasurement::outcome(int state) const {
  if (state < 1 || state > width())
    throw std::out_of_range("state index " + std::to_string(state) +
                            " out of range 1.." + std::to_string(width()));
  return outcome_from_int(outcomes(state - 1));
}

DerivedMeasurement evaluate(const Provenance& p,
                            const MeasurementTable& table) {
  const int width = table.state_count();
  switch (p.op) {
    case Provenance::Op::base: {
      check_row_index(table, p.base_row);
      return {table.row(p.base_row).transpose(), p};
    }
    case Provenance::Op::negation: {
      DerivedMeasurement child = evaluate(p.children.at(0), table);
      return {-child.outcomes, p};
    }
    case Provenance::Op::xor_op:
    case Provenance::Op::and_op:
    case Provenance::Op::or_op: {
      DerivedMeasurement left = evaluate(p.children.at(0), table);
      DerivedMeasurement right = evaluate(p.children.at(1), table);
      Eigen::VectorXi out(width);
      for (int k = 0; k < width; ++k) {
        Outcome a = outcome_from_int(left.outcomes(k));
        Outcome b = outcome_from_int(right.outcomes(k));
        Outcome v = p.op == Provenance::Op::xor_op  ? xor_outcome(a, b)
                    : p.op == Provenance::Op::and_op ? and_outcome(a, b)
                                                     : or_outcome(a, b);
        out(k) = sign_of(v);
      }
      return {std::move(out), p};
    }
    case Provenance::Op::diagonal: {
      require_square(table, "diagonal evaluation");
      Eigen::VectorXi out(width);
      for (int k = 0; k < width; ++k)
        out(k) = -table.entries()(k, k);
      return {std::move(out), p};
    }
  }
  throw std::invalid_argument("unknown provenance operator");
}

namespace {

DerivedMeasurement binary_compose(const MeasurementTable& table, int i, int j,
                                  Provenance::Op op) {
  check_row_index(table, i);
  check_row_index(table, j);
  Provenance p =
      Provenance::binary(op, Provenance::base(i), Provenance::base(j));
  return evaluate(p, table);
}

}  // namespace

DerivedMeasurement xor_compose(const MeasurementTable& table, int i, int j) {
  return binary_compose(table, i, j, Provenance::Op::xor_op);
}

DerivedMeasurement and_compose(const MeasurementTable& table, int i, int j) {
  return binary_compose(table, i, j, Provenance::Op::and_op);
}

DerivedMeasurement or_compose(const MeasurementTable& table, int i, int j) {
  return binary_compose(table, i, j, Provenance::Op::or_op);
}

DerivedMeasurement negate(const DerivedMeasurement& m) {
  return {-m.outcomes, Provenance::unary(Provenance::Op::negation, m.provenance)};
}

DerivedMeasurement diagonal_measurement(const MeasurementTable& table) {
  require_square(table, "diagonal_measurement");
  Provenance p;
  p.op = Provenance::Op::diagonal;
  return evaluate(p, table);
}

std::optional<int> find_matching_row(const MeasurementTable& table,
                                     const DerivedMeasurement& m) {
  if (m.width() != table.state_count())
    throw std::invalid_argument("derived measurement has width " +
                                std::to_string(m.width()) + ", table has " +
                                std::to_string(table.state_count()) +
                                " states");
  for (int n = 1; n <= table.measurement_count(); ++n)
    if (table.row(n).transpose() == m.outcomes) return n;
  return std::nullopt;
}

FixedPointReport lawvere_check(const MeasurementTable& table,
                               const OutcomeMap& alpha) {
  require_square(table, "lawvere_check");
  const int n = table.state_count();

  // g(k) = alpha(t(k,k)), expressed through the diagonal node so the
  // provenance re-evaluates correctly: DIAG is already the negated diagonal.
  Provenance diag;
  diag.op = Provenance::Op::diagonal;
  Provenance g_prov;
  if (alpha == OutcomeMap::negation()) {
    g_prov = diag;
  } else if (alpha == OutcomeMap::identity()) {
    g_prov = Provenance::unary(Provenance::Op::negation, diag);
  } else {
    Provenance::Op op = alpha.image_of_plus == Outcome::plus
                            ? Provenance::Op::or_op
                            : Provenance::Op::and_op;
    g_prov = Provenance::binary(
        op, diag, Provenance::unary(Provenance::Op::negation, diag));
  }

  FixedPointReport report;
  report.alpha = alpha;
  report.derived.provenance = g_prov;
  report.derived.outcomes.resize(n);
  for (int k = 1; k <= n; ++k)
    report.derived.outcomes(k - 1) =
        sign_of(alpha(table.outcome(k, k)));

  report.alpha_has_fixed_point = alpha.has_fixed_point();
  for (int row = 1; row <= n; ++row) {
    FixedPointReport::RowEntry entry;
    entry.row = row;
    entry.matches_derived =
        table.row(row).transpose() == report.derived.outcomes;
    entry.diagonal_value = table.outcome(row, row);
    entry.alpha_of_diagonal = alpha(entry.diagonal_value);
    entry.equation_holds = entry.diagonal_value == entry.alpha_of_diagonal;
    if (entry.matches_derived && !report.matching_row)
      report.matching_row = row;
    report.rows.push_back(entry);
  }
  report.contradiction_certified =
      !report.matching_row.has_value() && !report.alpha_has_fixed_point;
  return report;
}

MeasurementTable extend_with_diagonal(
    const MeasurementTable& table, Outcome corner,
    const std::optional<std::vector<Outcome>>& new_column) {
  require_square(table, "extend_with_diagonal");
  const int n = table.state_count();
  if (new_column && static_cast<int>(new_column->size()) != n)
    throw std::invalid_argument("new column has " +
                                std::to_string(new_column->size()) +
                                " entries, expected " + std::to_string(n));

  MeasurementTable::Matrix grown(n + 1, n + 1);
  grown.topLeftCorner(n, n) = table.entries();
  for (int r = 0; r < n; ++r)
    grown(r, n) = new_column ? sign_of((*new_column)[r]) : +1;
  for (int k = 0; k < n; ++k)
    grown(n, k) = -table.entries()(k, k);
  grown(n, n) = sign_of(corner);
  return MeasurementTable(std::move(grown));
}

namespace {

MeasurementTable table_from_json_text(const std::string& text,
                                      const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array() || doc.empty())
    throw ParseError(origin + ": expected a nonempty array of rows");
  std::vector<std::vector<int>> rows;
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& row = doc[r];
    if (!row.is_array() || row.empty())
      throw ParseError(origin + ": row " + std::to_string(r + 1) +
                       " must be a nonempty array");
    std::vector<int> values;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& cell = row[c];
      if (!cell.is_number_integer() ||
          (cell.get<int>() != 1 && cell.get<int>() != -1))
        throw ParseError(origin + ": row " + std::to_string(r + 1) +
                         ", entry " + std::to_string(c + 1) +
                         " must be 1 or -1");
      values.push_back(cell.get<int>());
    }
    rows.push_back(std::move(values));
  }
  try {
    return MeasurementTable::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

MeasurementTable table_from_grid_text(const std::string& text,
                                      const std::string& origin) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::vector<int> values;
    bool comment = false;
    for (char c : line) {
      if (comment) break;
      switch (c) {
        case '+':
          values.push_back(+1);
          break;
        case '-':
          values.push_back(-1);
          break;
        case ' ':
        case '\t':
        case '\r':
          break;
        case '#':
          comment = true;
          break;
        default:
          throw ParseError(origin + ":" + std::to_string(line_number) +
                           ": unexpected character '" + std::string(1, c) +
                           "', expected '+' or '-'");
      }
    }
    if (values.empty()) continue;
    if (!rows.empty() && values.size() != rows.front().size())
      throw ParseError(origin + ":" + std::to_string(line_number) + ": row has " +
                       std::to_string(values.size()) + " entries, expected " +
                       std::to_string(rows.front().size()));
    rows.push_back(std::move(values));
  }
  if (rows.empty())
    throw ParseError(origin + ": no table rows found");
  return MeasurementTable::from_rows(rows);
}

}  // namespace

MeasurementTable parse_table(const std::string& text,
                             const std::string& origin) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '[') return table_from_json_text(text, origin);
    break;
  }
  return table_from_grid_text(text, origin);
}

std::string format_table(const MeasurementTable& table) {
  std::string out;
  for (int r = 0; r < table.measurement_count(); ++r) {
    for (int c = 0; c < table.state_count(); ++c) {
      if (c > 0) out += ' ';
      out += table.entries()(r, c) > 0 ? '+' : '-';
    }
    out += '\n';
  }
  return out;
}

}  // namespace horizon
