#include <doctest.h>

#include <random>

#include "horizon/io.hpp"
#include "horizon/measurement_table.hpp"
#include "horizon/outcome.hpp"

using namespace horizon;

namespace {

constexpr Outcome P = Outcome::plus;
constexpr Outcome M = Outcome::minus;

// The worked 5x5 grid used across these tests; its diagonal is
// (+, -, -, +, +), so the negated diagonal is (-, +, +, -, -).
MeasurementTable reference_table() {
  return MeasurementTable::from_rows({{1, -1, 1, 1, 1},
                                      {1, -1, 1, -1, -1},
                                      {-1, 1, -1, -1, -1},
                                      {1, -1, -1, 1, 1},
                                      {-1, -1, -1, 1, 1}});
}

MeasurementTable random_table(std::mt19937_64& rng, int rows, int cols) {
  MeasurementTable::Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = (rng() & 1u) ? 1 : -1;
  return MeasurementTable(std::move(m));
}

}  // namespace

TEST_CASE("outcome truth tables") {
  CHECK(negated(P) == M);
  CHECK(negated(M) == P);
  CHECK(sign_of(P) == 1);
  CHECK(sign_of(M) == -1);
  CHECK(truth_of(P));
  CHECK_FALSE(truth_of(M));

  // xor is +1 exactly when the arguments differ
  CHECK(xor_outcome(P, P) == M);
  CHECK(xor_outcome(M, M) == M);
  CHECK(xor_outcome(P, M) == P);
  CHECK(xor_outcome(M, P) == P);

  CHECK(and_outcome(P, P) == P);
  CHECK(and_outcome(P, M) == M);
  CHECK(and_outcome(M, P) == M);
  CHECK(and_outcome(M, M) == M);

  CHECK(or_outcome(P, P) == P);
  CHECK(or_outcome(P, M) == P);
  CHECK(or_outcome(M, P) == P);
  CHECK(or_outcome(M, M) == M);

  CHECK(outcome_from_int(1) == P);
  CHECK(outcome_from_int(-1) == M);
  CHECK_THROWS_AS(outcome_from_int(0), std::invalid_argument);
  CHECK_THROWS_AS(outcome_from_int(2), std::invalid_argument);
  CHECK(outcome_char(P) == '+');
  CHECK(outcome_char(M) == '-');
}

TEST_CASE("outcome self-maps and fixed points") {
  auto identity = OutcomeMap::identity();
  auto negation = OutcomeMap::negation();
  auto const_plus = OutcomeMap::constant(P);
  auto const_minus = OutcomeMap::constant(M);

  CHECK(identity(P) == P);
  CHECK(identity(M) == M);
  CHECK(negation(P) == M);
  CHECK(negation(M) == P);
  CHECK(const_plus(M) == P);
  CHECK(const_minus(P) == M);

  CHECK(identity.has_fixed_point());
  CHECK_FALSE(negation.has_fixed_point());
  CHECK(const_plus.has_fixed_point());
  CHECK(const_minus.has_fixed_point());

  CHECK(const_plus.fixes(P));
  CHECK_FALSE(const_plus.fixes(M));

  // negation is the only self-map of a two-point set without a fixed point
  for (const OutcomeMap& alpha : all_outcome_maps())
    CHECK(alpha.has_fixed_point() == (alpha != negation));

  CHECK(all_outcome_maps().size() == 4);
  CHECK(identity.name() == "identity");
  CHECK(negation.name() == "negation");
}

TEST_CASE("measurement table validation and access") {
  auto table = reference_table();
  CHECK(table.measurement_count() == 5);
  CHECK(table.state_count() == 5);
  CHECK(table.square());

  CHECK(table.outcome(1, 1) == P);
  CHECK(table.outcome(1, 2) == M);
  CHECK(table.outcome(3, 1) == M);
  CHECK(table.outcome(5, 5) == P);
  CHECK_THROWS_AS(table.outcome(0, 1), std::out_of_range);
  CHECK_THROWS_AS(table.outcome(6, 1), std::out_of_range);
  CHECK_THROWS_AS(table.outcome(1, 6), std::out_of_range);
  CHECK_THROWS_AS(table.row(0), std::out_of_range);

  MeasurementTable::Matrix bad(2, 2);
  bad << 1, -1, 0, 1;
  CHECK_THROWS_AS(MeasurementTable{bad}, std::invalid_argument);
  CHECK_THROWS_AS(MeasurementTable(MeasurementTable::Matrix(0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(MeasurementTable::from_rows({{1, -1}, {1}}),
                  std::invalid_argument);
}

TEST_CASE("logical composition of rows") {
  auto table = reference_table();

  // m1 xor m2 happens to reproduce m5 on this grid
  auto x12 = xor_compose(table, 1, 2);
  CHECK(x12.width() == 5);
  for (int k = 1; k <= 5; ++k)
    CHECK(x12.outcome(k) ==
          xor_outcome(table.outcome(1, k), table.outcome(2, k)));
  CHECK(find_matching_row(table, x12) == 5);

  auto a12 = and_compose(table, 1, 2);
  auto o12 = or_compose(table, 1, 2);
  for (int k = 1; k <= 5; ++k) {
    CHECK(a12.outcome(k) ==
          and_outcome(table.outcome(1, k), table.outcome(2, k)));
    CHECK(o12.outcome(k) ==
          or_outcome(table.outcome(1, k), table.outcome(2, k)));
  }

  auto n1 = negate(x12);
  for (int k = 1; k <= 5; ++k) CHECK(n1.outcome(k) == negated(x12.outcome(k)));

  CHECK(x12.provenance.to_string() == "XOR(m1,m2)");
  CHECK(a12.provenance.to_string() == "AND(m1,m2)");
  CHECK(o12.provenance.to_string() == "OR(m1,m2)");
  CHECK(n1.provenance.to_string() == "NOT(XOR(m1,m2))");

  // provenance expressions re-evaluate to the same answers
  auto again = evaluate(n1.provenance, table);
  CHECK(again.outcomes == n1.outcomes);

  CHECK_THROWS_AS(xor_compose(table, 1, 6), std::out_of_range);
}

TEST_CASE("negated diagonal escapes the reference table") {
  auto table = reference_table();
  auto diag = diagonal_measurement(table);

  const std::array<Outcome, 5> expected{M, P, P, M, M};
  for (int k = 1; k <= 5; ++k) CHECK(diag.outcome(k) == expected[k - 1]);
  CHECK(diag.provenance.to_string() == "DIAG");

  CHECK_FALSE(find_matching_row(table, diag).has_value());

  MeasurementTable rect = MeasurementTable::from_rows({{1, -1, 1}, {1, 1, 1}});
  CHECK_THROWS_AS(diagonal_measurement(rect), std::invalid_argument);

  auto wide = xor_compose(rect, 1, 2);
  CHECK_THROWS_AS(find_matching_row(table, wide), std::invalid_argument);
}

TEST_CASE("fixed point reports on the reference table") {
  auto table = reference_table();

  SUBCASE("negation certifies a contradiction") {
    auto report = lawvere_check(table, OutcomeMap::negation());
    CHECK_FALSE(report.alpha_has_fixed_point);
    CHECK_FALSE(report.matching_row.has_value());
    CHECK(report.contradiction_certified);
    for (const auto& row : report.rows) {
      CHECK_FALSE(row.matches_derived);
      // t(n, n) == not t(n, n) can never hold
      CHECK_FALSE(row.equation_holds);
      CHECK(row.alpha_of_diagonal == negated(row.diagonal_value));
    }
  }

  SUBCASE("identity finds its witness row") {
    auto report = lawvere_check(table, OutcomeMap::identity());
    CHECK(report.alpha_has_fixed_point);
    // g(k) = t(k, k) = (+, -, -, +, +), which is exactly m4
    CHECK(report.matching_row == 4);
    CHECK_FALSE(report.contradiction_certified);
    CHECK(report.rows[3].matches_derived);
    CHECK(report.rows[3].equation_holds);
  }

  SUBCASE("constant maps never certify") {
    for (Outcome v : {P, M}) {
      auto report = lawvere_check(table, OutcomeMap::constant(v));
      CHECK(report.alpha_has_fixed_point);
      CHECK_FALSE(report.matching_row.has_value());
      CHECK_FALSE(report.contradiction_certified);
    }
  }

  MeasurementTable rect = MeasurementTable::from_rows({{1, -1, 1}, {1, 1, 1}});
  CHECK_THROWS_AS(lawvere_check(rect, OutcomeMap::negation()),
                  std::invalid_argument);
}

TEST_CASE("exhaustive 2x2 oracle for the fixed point check") {
  // Brute force over every 2x2 table and every self-map, with the match and
  // fixed-point logic recomputed from scratch in plain ints.
  for (int bits = 0; bits < 16; ++bits) {
    int e[4];
    for (int i = 0; i < 4; ++i) e[i] = (bits >> i) & 1 ? 1 : -1;
    auto table = MeasurementTable::from_rows({{e[0], e[1]}, {e[2], e[3]}});

    for (const OutcomeMap& alpha : all_outcome_maps()) {
      auto report = lawvere_check(table, alpha);

      int g[2];
      for (int k = 0; k < 2; ++k) {
        int diag = k == 0 ? e[0] : e[3];
        g[k] = sign_of(alpha(outcome_from_int(diag)));
      }
      bool row0 = e[0] == g[0] && e[1] == g[1];
      bool row1 = e[2] == g[0] && e[3] == g[1];
      std::optional<int> expect_match;
      if (row0)
        expect_match = 1;
      else if (row1)
        expect_match = 2;
      bool fixed = sign_of(alpha(P)) == 1 || sign_of(alpha(M)) == -1;

      CHECK(report.derived.outcome(1) == outcome_from_int(g[0]));
      CHECK(report.derived.outcome(2) == outcome_from_int(g[1]));
      CHECK(report.matching_row == expect_match);
      CHECK(report.alpha_has_fixed_point == fixed);
      CHECK(report.contradiction_certified == (!expect_match && !fixed));

      // a matching row forces the diagonal equation at that row
      if (report.matching_row) {
        const auto& entry = report.rows[*report.matching_row - 1];
        CHECK(entry.equation_holds);
      }
    }
  }
}

TEST_CASE("random square tables never contain their negated diagonal") {
  std::mt19937_64 rng(20240814);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);
    auto table = random_table(rng, n, n);
    auto diag = diagonal_measurement(table);
    CHECK_FALSE(find_matching_row(table, diag).has_value());
    CHECK(lawvere_check(table, OutcomeMap::negation()).contradiction_certified);
    CHECK_FALSE(
        lawvere_check(table, OutcomeMap::identity()).contradiction_certified);
  }
}

TEST_CASE("extending a table does not close the diagonal gap") {
  auto table = reference_table();
  auto extended = extend_with_diagonal(table, P);
  CHECK(extended.measurement_count() == 6);
  CHECK(extended.state_count() == 6);

  // old entries survive, the new column defaults to +, and the last row is
  // the old negated diagonal followed by the corner
  for (int n = 1; n <= 5; ++n) {
    for (int k = 1; k <= 5; ++k)
      CHECK(extended.outcome(n, k) == table.outcome(n, k));
    CHECK(extended.outcome(n, 6) == P);
  }
  const std::array<Outcome, 6> last{M, P, P, M, M, P};
  for (int k = 1; k <= 6; ++k) CHECK(extended.outcome(6, k) == last[k - 1]);

  // the enlarged table has its own escaping diagonal
  CHECK(lawvere_check(extended, OutcomeMap::negation()).contradiction_certified);

  std::vector<Outcome> column{P, M, P, M, P};
  auto custom = extend_with_diagonal(table, M, column);
  for (int n = 1; n <= 5; ++n)
    CHECK(custom.outcome(n, 6) == column[n - 1]);
  CHECK(custom.outcome(6, 6) == M);

  MeasurementTable rect = MeasurementTable::from_rows({{1, -1, 1}, {1, 1, 1}});
  CHECK_THROWS_AS(extend_with_diagonal(rect, P), std::invalid_argument);
  CHECK_THROWS_AS(extend_with_diagonal(table, P, std::vector<Outcome>{P, M}),
                  std::invalid_argument);
}

TEST_CASE("table parsing") {
  SUBCASE("character grid with comments") {
    auto table = parse_table("# header\n+-+\n\n-+-\n", "grid");
    CHECK(table.measurement_count() == 2);
    CHECK(table.state_count() == 3);
    CHECK(table.outcome(1, 1) == P);
    CHECK(table.outcome(2, 1) == M);
  }

  SUBCASE("json matrix") {
    auto table = parse_table("[[1, -1], [-1, 1]]", "doc");
    CHECK(table.measurement_count() == 2);
    CHECK(table.outcome(1, 2) == M);
  }

  SUBCASE("grid errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_table("+-\n+\n", "t"),
                         doctest::Contains("t:2"), ParseError);
    CHECK_THROWS_WITH_AS(parse_table("+x\n", "t"), doctest::Contains("t:1"),
                         ParseError);
    CHECK_THROWS_AS(parse_table("", "t"), ParseError);
    CHECK_THROWS_AS(parse_table("# only comments\n", "t"), ParseError);
  }

  SUBCASE("json errors") {
    CHECK_THROWS_AS(parse_table("[[1, 2]]", "t"), ParseError);
    CHECK_THROWS_AS(parse_table("[[1, -1], [1]]", "t"), ParseError);
    CHECK_THROWS_AS(parse_table("[nope", "t"), ParseError);
    CHECK_THROWS_AS(parse_table("{\"rows\": []}", "t"), ParseError);
  }

  SUBCASE("format round trip") {
    auto table = reference_table();
    auto back = parse_table(format_table(table), "echo");
    CHECK(back == table);
  }
}
