#include <doctest.h>

#include <cmath>
#include <random>

#include "obslab/error.hpp"
#include "obslab/gram.hpp"

using namespace obslab;

namespace {

std::vector<std::size_t> centres(std::initializer_list<double> targets) {
  std::vector<std::size_t> out;
  for (double t : targets) out.push_back(index_nearest(t));
  return out;
}

void check_psd_unit(const GramMatrix& g) {
  const auto ev = sym_eigs(g.entries).eigenvalues;
  CHECK(ev.front() >= -1e-9);
  CHECK(ev.back() <= 1 + 1e-9);
}

}  // namespace

TEST_CASE("half-line closed form") {
  for (std::size_t j = 1; j <= 60; ++j) {
    CHECK(halfline_entry(j, j) == 0.5);
    for (std::size_t k = j + 2; k <= 60; k += 2) CHECK(halfline_entry(j, k) == 0.0);
    if (j > 1) CHECK(halfline_entry(j - 1, j) == halfline_entry(j, j - 1));
  }
}

TEST_CASE("quadrature entries: orthonormality and the half-line oracle") {
  const IntervalUnion line({{-400, 400}});
  for (auto [j, k] : {std::pair{1, 1}, {3, 3}, {40, 40}, {1, 2}, {5, 8}, {30, 33}}) {
    CHECK(std::fabs(set_entry(line, j, k) - (j == k ? 1.0 : 0.0)) <= 1e-6);
  }
  const IntervalUnion half({{0, 400}});
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(1, 300);
  for (int i = 0; i < 20; ++i) {
    const std::size_t j = pick(rng), k = pick(rng);
    CAPTURE(j);
    CAPTURE(k);
    CHECK(std::fabs(set_entry(half, j, k) - halfline_entry(j, k)) <= 1e-7);
  }
  CHECK_THROWS_AS(set_entry(half, 1, 2, 1e-12), PreconditionError);
}

TEST_CASE("cluster Gram on the full line and half-line") {
  const std::size_t n = index_nearest(80.0);
  const GramMatrix full = cluster_gram(parse_set_spec("full"), n, 0.75, 1.0);
  CHECK(frobenius_norm(subtract(full.entries, Matrix::identity(full.size()))) <= 1e-6);

  const GramMatrix half = cluster_gram(parse_set_spec("halfline:+"), n, 0.5, 1.0);
  CHECK(half.cluster.offset() % 2 == 0);
  for (std::size_t a = 0; a < half.size(); ++a)
    for (std::size_t b = 0; b < half.size(); ++b)
      if (a != b && (a + b) % 2 == 0) CHECK(half.entries(a, b) == 0.0);
  check_psd_unit(half);

  const GramMatrix neg = cluster_gram(parse_set_spec("halfline:-"), n, 0.5, 1.0);
  CHECK(frobenius_norm(subtract(add(half.entries, neg.entries), Matrix::identity(half.size()))) <= 1e-12);
}

TEST_CASE("complement identity and spectrum bounds") {
  const SetSpec e = parse_set_spec("athin-comp:alpha=1.5");
  const std::size_t n = index_nearest(60.0);
  GramOptions direct;
  direct.route = GramRoute::Direct;
  const GramMatrix g = cluster_gram(e, n, 1.5, 1.0, direct);
  const GramMatrix gc = cluster_gram(e.complement(), n, 1.5, 1.0, direct);
  REQUIRE(g.indices == gc.indices);
  const Matrix sum = add(g.entries, gc.entries);
  double worst = 0.0;
  for (std::size_t a = 0; a < sum.rows(); ++a)
    for (std::size_t b = 0; b < sum.cols(); ++b) worst = std::max(worst, std::fabs(sum(a, b) - (a == b ? 1.0 : 0.0)));
  CHECK(worst <= 2 * direct.tol);
  check_psd_unit(g);
  check_psd_unit(gc);

  GramOptions comp;
  comp.route = GramRoute::Complement;
  const GramMatrix via = cluster_gram(e, n, 1.5, 1.0, comp);
  CHECK(frobenius_norm(subtract(via.entries, g.entries)) <= 1e-9);

  const GramMatrix periodic = cluster_gram(parse_set_spec("periodic:gamma=0.5,L=1"), n, 1.0, 1.0);
  check_psd_unit(periodic);
}

TEST_CASE("nested clusters: smallest eigenvalue never increases") {
  const SetSpec e = parse_set_spec("athin-comp:alpha=1.5");
  std::vector<std::size_t> idx;
  const std::size_t first = index_nearest(40.0);
  for (std::size_t k = 0; k < 24; ++k) idx.push_back(first + k);
  const GramMatrix g = gram_for_indices(e, idx);
  double prev = 1e9;
  for (std::size_t size = 1; size <= idx.size(); ++size) {
    const double m = min_eig(g.entries.principal(0, size));
    CHECK(m <= prev + 1e-14);
    prev = m;
  }
}

TEST_CASE("off-diagonal decay profile") {
  const auto ns = centres({50.0, 100.0, 200.0, 400.0});
  for (const auto& row : offdiag_decay_profile(parse_set_spec("full"), 1.5, ns)) CHECK(row.max_offdiag == 0.0);

  const auto thin = offdiag_decay_profile(parse_set_spec("athin-comp:alpha=1.5"), 1.5, ns);
  const auto slow = offdiag_decay_profile(parse_set_spec("athin-comp:alpha=0.75"), 0.75, ns);
  // recorded ratio column 1.33..1.39 at alpha = 1.5
  for (const auto& row : thin) {
    CHECK(row.ratio <= 1.39 * 1.1);
    CHECK(row.err_est <= 1e-10);
  }
  const double thin_decay = thin.back().max_offdiag / thin.front().max_offdiag;
  const double slow_decay = slow.back().max_offdiag / slow.front().max_offdiag;
  CHECK(slow_decay > thin_decay);
}

TEST_CASE("diagonal lower profile") {
  const std::vector<std::size_t> few = {1, 2, 17, 150, 600};
  for (const auto& row : diag_lower_profile(parse_set_spec("halfline:+"), few).rows) CHECK(row.value == 0.5);

  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= 500; ++k) ks.push_back(k);
  // recorded floor 0.5
  CHECK(diag_lower_profile(parse_set_spec("periodic:gamma=0.5,L=1"), ks).min_value >= 0.45);

  const auto unit = diag_lower_profile(parse_set_spec("intervals:[0,1)"), {1, 10, 50, 200}).rows;
  for (std::size_t i = 1; i < unit.size(); ++i) CHECK(unit[i].value < unit[i - 1].value);
  CHECK(unit.back().value < 0.01);
}

TEST_CASE("serialization") {
  const GramMatrix g = gram_for_indices(parse_set_spec("halfline:+"), {3, 4, 5});
  const auto j = gram_to_json(g);
  CHECK(j.at("indices") == nlohmann::json({3, 4, 5}));
  CHECK(j.at("method") == "closed_form");
  const std::string csv = gram_to_csv(g);
  CHECK(csv.find("0.5") != std::string::npos);
}
