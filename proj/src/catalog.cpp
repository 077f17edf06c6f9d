#include "gospace/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "gospace/classical.hpp"
#include "gospace/error.hpp"

namespace gospace {

namespace cl = classical;

namespace {

struct Alias {
  std::string_view id;
  std::string_view canonical;
};

// Short names accepted in addition to the family/params grammar.
constexpr Alias kAliases[] = {
    {"so5/u2", "so-u/2"},
    {"su3/su2", "su-su/2,1"},
    {"sp2/sp1u1", "sp-spu/1"},
    {"su3/t2", "wallach-su/1,1,1"},
    {"so6/so2^3", "wallach-so/2,2,2"},
    {"sp3/sp1^3", "wallach-sp/1,1,1"},
    {"product-sym/3xS2", "product-sym/3"},
    {"sp3/u2sp1", "sp-usp/2,1"},
};

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

[[noreturn]] void parse_error(std::string_view text, std::size_t col, const std::string& msg) {
  throw Error(ErrorCode::SpecParse, "space spec '" + std::string(text) + "' at 1:" +
                                        std::to_string(col + 1) + ": " + msg);
}

Mat g_rows(const std::vector<Mat>& basis, const std::vector<Mat>& mats) {
  if (mats.empty()) return Mat(0, static_cast<Eigen::Index>(basis.size()));
  return matrix_coordinates(basis, mats);
}

// m_1 = tangent of G/K, m_2 = tangent of K/H.
CatalogSpace two_block(const std::vector<Mat>& basis, const std::vector<Mat>& h,
                       const std::vector<Mat>& k, SpaceInfo info) {
  LieAlgebra g = from_matrices(basis);
  const Mat k_rows = g_rows(basis, k);
  HomogeneousSpace space = HomogeneousSpace::build(std::move(g), g_rows(basis, h));
  const Eigen::Index dm = space.dim_m();
  Mat km(k_rows.rows(), dm);
  for (Eigen::Index i = 0; i < k_rows.rows(); ++i) {
    km.row(i) = space.m_coordinates(k_rows.row(i).transpose()).transpose();
  }
  const Mat m2 = row_span(km);
  const Mat m1 = orthogonal_complement(m2, dm);
  Decomposition dec({m1, m2});
  validate_decomposition(space, dec);
  return CatalogSpace{std::move(space), std::move(dec), std::move(info)};
}

CatalogSpace split_by_matrices(const std::vector<Mat>& basis, const std::vector<Mat>& h,
                               const std::vector<std::vector<Mat>>& summands, SpaceInfo info) {
  LieAlgebra g = from_matrices(basis);
  HomogeneousSpace space = HomogeneousSpace::build(std::move(g), g_rows(basis, h));
  std::vector<Mat> rows;
  rows.reserve(summands.size());
  for (const auto& s : summands) rows.push_back(g_rows(basis, s));
  Decomposition dec = decomposition_from_g_rows(space, rows);
  return CatalogSpace{std::move(space), std::move(dec), std::move(info)};
}

void check_dim(Eigen::Index dim, Eigen::Index max_dim, const std::string& id) {
  if (dim > max_dim) {
    throw Error(ErrorCode::UnsupportedRank, id + ": dim g = " + std::to_string(dim) +
                                                " exceeds the cap " + std::to_string(max_dim));
  }
}

void require_params(const SpaceSpec& spec, std::size_t count) {
  if (spec.params.size() != count) {
    throw Error(ErrorCode::UnknownSpec, spec.family + " expects " + std::to_string(count) +
                                            " integer parameter(s)");
  }
}

// so(2k+1) ⊃ so(2k) ⊃ u(k)
CatalogSpace make_so_u(const SpaceSpec& spec, SpaceInfo info, Eigen::Index max_dim) {
  require_params(spec, 1);
  const int k = spec.params[0];
  if (k < 2) throw Error(ErrorCode::UnsupportedRank, "so-u requires k >= 2");
  const int n = 2 * k + 1;
  check_dim(n * (n - 1) / 2, max_dim, info.id);
  std::vector<Mat> h;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      if (i != j) h.push_back(cl::pad(cl::su_real(k, i, j), n));
      h.push_back(cl::pad(cl::su_imag(k, i, j), n));
    }
  }
  std::vector<Mat> kk;
  for (const Mat& m : cl::so_basis(2 * k)) kk.push_back(cl::pad(m, n));
  info.description = "SO(" + std::to_string(n) + ")/U(" + std::to_string(k) + "), K = SO(" +
                     std::to_string(2 * k) + ")";
  info.tags = {std::string(tags::kGoTriple), std::string(tags::kTwoSummand)};
  return two_block(cl::so_basis(n), h, kk, std::move(info));
}

// su(m+n) ⊃ s(u(m) + u(n)) ⊃ su(m) + su(n)
CatalogSpace make_su_su(const SpaceSpec& spec, SpaceInfo info, Eigen::Index max_dim) {
  require_params(spec, 2);
  const int m = spec.params[0];
  const int n = spec.params[1];
  if (m < 1 || n < 1 || m < n) throw Error(ErrorCode::UnsupportedRank, "su-su requires m >= n >= 1");
  const int big = m + n;
  check_dim(big * big - 1, max_dim, info.id);
  std::vector<Mat> h;
  auto block = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      for (int j = i + 1; j < hi; ++j) {
        h.push_back(cl::su_real(big, i, j));
        h.push_back(cl::su_imag(big, i, j));
      }
    }
    for (int i = lo; i + 1 < hi; ++i) {
      std::vector<double> d(static_cast<std::size_t>(big), 0.0);
      d[static_cast<std::size_t>(i)] = 1.0;
      d[static_cast<std::size_t>(i + 1)] = -1.0;
      h.push_back(cl::su_diag(d));
    }
  };
  block(0, m);
  block(m, big);
  std::vector<Mat> k = h;
  std::vector<double> center(static_cast<std::size_t>(big));
  for (int i = 0; i < big; ++i) center[static_cast<std::size_t>(i)] = i < m ? n : -m;
  k.push_back(cl::su_diag(center));
  info.description = "SU(" + std::to_string(big) + ")/SU(" + std::to_string(m) + ")xSU(" +
                     std::to_string(n) + "), K = S(U(" + std::to_string(m) + ")U(" +
                     std::to_string(n) + "))";
  if (m > n) {
    info.tags = {std::string(tags::kGoTriple), std::string(tags::kTwoSummand)};
  } else {
    info.tags = {std::string(tags::kControl), std::string(tags::kTwoSummand)};
  }
  return two_block(cl::su_basis(big), h, k, std::move(info));
}

// sp(n+1) ⊃ sp(n) + sp(1) ⊃ sp(n) + u(1)
CatalogSpace make_sp_spu(const SpaceSpec& spec, SpaceInfo info, Eigen::Index max_dim) {
  require_params(spec, 1);
  const int n = spec.params[0];
  if (n < 1) throw Error(ErrorCode::UnsupportedRank, "sp-spu requires n >= 1");
  const int big = n + 1;
  check_dim(big * (2 * big + 1), max_dim, info.id);
  std::vector<Mat> h;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (i != j) h.push_back(cl::sp_a_real(big, i, j));
      h.push_back(cl::sp_a_imag(big, i, j));
      h.push_back(cl::sp_b_real(big, i, j));
      h.push_back(cl::sp_b_imag(big, i, j));
    }
  }
  h.push_back(cl::sp_a_imag(big, n, n));
  std::vector<Mat> k = h;
  k.push_back(cl::sp_b_real(big, n, n));
  k.push_back(cl::sp_b_imag(big, n, n));
  info.description = "Sp(" + std::to_string(big) + ")/Sp(" + std::to_string(n) +
                     ")U(1), K = Sp(" + std::to_string(n) + ")xSp(1)";
  info.tags = {std::string(tags::kGoTriple), std::string(tags::kTwoSummand)};
  return two_block(cl::sp_basis(big), h, k, std::move(info));
}

// sp(p+q) ⊃ sp(p) + sp(q) ⊃ u(p) + sp(q): a two-summand flag manifold
CatalogSpace make_sp_usp(const SpaceSpec& spec, SpaceInfo info, Eigen::Index max_dim) {
  require_params(spec, 2);
  const int p = spec.params[0];
  const int q = spec.params[1];
  if (p < 1 || q < 1) throw Error(ErrorCode::UnsupportedRank, "sp-usp requires p, q >= 1");
  const int big = p + q;
  check_dim(big * (2 * big + 1), max_dim, info.id);
  std::vector<Mat> h;
  std::vector<Mat> k;
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      if (i != j) h.push_back(cl::sp_a_real(big, i, j));
      h.push_back(cl::sp_a_imag(big, i, j));
      k.push_back(cl::sp_b_real(big, i, j));
      k.push_back(cl::sp_b_imag(big, i, j));
    }
  }
  for (int i = p; i < big; ++i) {
    for (int j = i; j < big; ++j) {
      if (i != j) h.push_back(cl::sp_a_real(big, i, j));
      h.push_back(cl::sp_a_imag(big, i, j));
      h.push_back(cl::sp_b_real(big, i, j));
      h.push_back(cl::sp_b_imag(big, i, j));
    }
  }
  k.insert(k.end(), h.begin(), h.end());
  info.description = "Sp(" + std::to_string(big) + ")/U(" + std::to_string(p) + ")xSp(" +
                     std::to_string(q) + "), K = Sp(" + std::to_string(p) + ")xSp(" +
                     std::to_string(q) + ")";
  info.tags = {std::string(tags::kControl), std::string(tags::kTwoSummand)};
  return two_block(cl::sp_basis(big), h, k, std::move(info));
}

std::vector<int> block_offsets(const std::vector<int>& sizes) {
  std::vector<int> off(sizes.size() + 1, 0);
  std::partial_sum(sizes.begin(), sizes.end(), off.begin() + 1);
  return off;
}

CatalogSpace make_wallach(const SpaceSpec& spec, SpaceInfo info, Eigen::Index max_dim) {
  require_params(spec, 3);
  const std::vector<int>& sz = spec.params;
  for (int s : sz) {
    if (s < 1) throw Error(ErrorCode::UnsupportedRank, "block sizes must be >= 1");
  }
  const std::vector<int> off = block_offsets(sz);
  const int big = off.back();
  // m_1 = (0,1) block, m_2 = (0,2) block, m_3 = (1,2) block
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<Mat> basis;
  std::vector<Mat> h;
  std::vector<std::vector<Mat>> summands(3);
  const std::string kind = spec.family.substr(std::string("wallach-").size());
  auto blk = [&](int idx) { return std::pair{off[static_cast<std::size_t>(idx)], off[static_cast<std::size_t>(idx) + 1]}; };

  if (kind == "so") {
    if (big < 3) throw Error(ErrorCode::UnsupportedRank, "so(k+l+m) needs k+l+m >= 3");
    check_dim(big * (big - 1) / 2, max_dim, info.id);
    basis = cl::so_basis(big);
    for (int b = 0; b < 3; ++b) {
      auto [lo, hi] = blk(b);
      for (int i = lo; i < hi; ++i)
        for (int j = i + 1; j < hi; ++j) h.push_back(cl::so_gen(big, i, j));
    }
    for (int s = 0; s < 3; ++s) {
      auto [alo, ahi] = blk(pairs[s][0]);
      auto [blo, bhi] = blk(pairs[s][1]);
      for (int i = alo; i < ahi; ++i)
        for (int j = blo; j < bhi; ++j) summands[static_cast<std::size_t>(s)].push_back(cl::so_gen(big, i, j));
    }
    info.description = "SO(" + std::to_string(big) + ")/SO(" + std::to_string(sz[0]) + ")xSO(" +
                       std::to_string(sz[1]) + ")xSO(" + std::to_string(sz[2]) + ")";
  } else if (kind == "su") {
    check_dim(big * big - 1, max_dim, info.id);
    basis = cl::su_basis(big);
    for (int b = 0; b < 3; ++b) {
      auto [lo, hi] = blk(b);
      for (int i = lo; i < hi; ++i)
        for (int j = i + 1; j < hi; ++j) {
          h.push_back(cl::su_real(big, i, j));
          h.push_back(cl::su_imag(big, i, j));
        }
    }
    for (int i = 0; i + 1 < big; ++i) {
      std::vector<double> d(static_cast<std::size_t>(big), 0.0);
      d[static_cast<std::size_t>(i)] = 1.0;
      d[static_cast<std::size_t>(i + 1)] = -1.0;
      h.push_back(cl::su_diag(d));
    }
    for (int s = 0; s < 3; ++s) {
      auto [alo, ahi] = blk(pairs[s][0]);
      auto [blo, bhi] = blk(pairs[s][1]);
      for (int i = alo; i < ahi; ++i)
        for (int j = blo; j < bhi; ++j) {
          summands[static_cast<std::size_t>(s)].push_back(cl::su_real(big, i, j));
          summands[static_cast<std::size_t>(s)].push_back(cl::su_imag(big, i, j));
        }
    }
    info.description = "SU(" + std::to_string(big) + ")/S(U(" + std::to_string(sz[0]) + ")U(" +
                       std::to_string(sz[1]) + ")U(" + std::to_string(sz[2]) + "))";
  } else if (kind == "sp") {
    check_dim(big * (2 * big + 1), max_dim, info.id);
    basis = cl::sp_basis(big);
    for (int b = 0; b < 3; ++b) {
      auto [lo, hi] = blk(b);
      for (int i = lo; i < hi; ++i)
        for (int j = i; j < hi; ++j) {
          if (i != j) h.push_back(cl::sp_a_real(big, i, j));
          h.push_back(cl::sp_a_imag(big, i, j));
          h.push_back(cl::sp_b_real(big, i, j));
          h.push_back(cl::sp_b_imag(big, i, j));
        }
    }
    for (int s = 0; s < 3; ++s) {
      auto [alo, ahi] = blk(pairs[s][0]);
      auto [blo, bhi] = blk(pairs[s][1]);
      auto& dst = summands[static_cast<std::size_t>(s)];
      for (int i = alo; i < ahi; ++i)
        for (int j = blo; j < bhi; ++j) {
          dst.push_back(cl::sp_a_real(big, i, j));
          dst.push_back(cl::sp_a_imag(big, i, j));
          dst.push_back(cl::sp_b_real(big, i, j));
          dst.push_back(cl::sp_b_imag(big, i, j));
        }
    }
    info.description = "Sp(" + std::to_string(big) + ")/Sp(" + std::to_string(sz[0]) + ")xSp(" +
                       std::to_string(sz[1]) + ")xSp(" + std::to_string(sz[2]) + ")";
  } else {
    throw Error(ErrorCode::UnknownSpec, "unknown family " + spec.family);
  }
  info.tags = {std::string(tags::kWallachII)};
  return split_by_matrices(basis, h, summands, std::move(info));
}

// k + k + k + k over diag(k)
CatalogSpace make_ledger_obata(const SpaceSpec& spec, SpaceInfo info, Eigen::Index max_dim) {
  std::vector<Mat> factor_basis;
  if (spec.token == "su2") {
    factor_basis = cl::su_basis(2);
  } else if (spec.token == "so3") {
    factor_basis = cl::so_basis(3);
  } else {
    throw Error(ErrorCode::UnknownSpec, "ledger-obata supports su2 or so3");
  }
  const LieAlgebra k = from_matrices(factor_basis);
  const Eigen::Index d = k.dim();
  check_dim(4 * d, max_dim, info.id);
  const std::vector<LieAlgebra> factors(4, k);
  LieAlgebra g = direct_sum(factors);

  auto pattern = [&](const int (&sign)[4]) {
    Mat rows = Mat::Zero(d, 4 * d);
    for (Eigen::Index x = 0; x < d; ++x)
      for (int f = 0; f < 4; ++f) rows(x, f * d + x) = sign[f];
    return rows;
  };
  const int diag[4] = {1, 1, 1, 1};
  const int s1[4] = {1, 1, -1, -1};
  const int s2[4] = {1, -1, 1, -1};
  const int s3[4] = {1, -1, -1, 1};
  HomogeneousSpace space = HomogeneousSpace::build(std::move(g), pattern(diag));
  Decomposition dec = decomposition_from_g_rows(space, {pattern(s1), pattern(s2), pattern(s3)});
  info.description = std::string("Ledger-Obata space K^4/diag(K), K = ") +
                     (spec.token == "su2" ? "SU(2)" : "SO(3)");
  info.tags = {std::string(tags::kWallachIII)};
  return CatalogSpace{std::move(space), std::move(dec), std::move(info)};
}

// (SO(3)/SO(2))^3
CatalogSpace make_product_sym(const SpaceSpec& spec, SpaceInfo info, Eigen::Index max_dim) {
  require_params(spec, 1);
  if (spec.params[0] != 3) throw Error(ErrorCode::UnsupportedRank, "product-sym supports 3 factors");
  const LieAlgebra so3 = from_matrices(cl::so_basis(3));
  check_dim(9, max_dim, info.id);
  const std::vector<LieAlgebra> factors(3, so3);
  LieAlgebra g = direct_sum(factors);
  // so_basis(3) order: L01, L02, L12; h in each factor is span(L01)
  Mat h = Mat::Zero(3, 9);
  std::vector<Mat> summands;
  for (int f = 0; f < 3; ++f) {
    h(f, 3 * f) = 1.0;
    Mat s = Mat::Zero(2, 9);
    s(0, 3 * f + 1) = 1.0;
    s(1, 3 * f + 2) = 1.0;
    summands.push_back(s);
  }
  HomogeneousSpace space = HomogeneousSpace::build(std::move(g), h);
  Decomposition dec = decomposition_from_g_rows(space, summands);
  info.description = "(SO(3)/SO(2))^3, product of three symmetric spaces";
  info.tags = {std::string(tags::kWallachI)};
  return CatalogSpace{std::move(space), std::move(dec), std::move(info)};
}

}  // namespace

bool SpaceInfo::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

SpaceSpec SpaceSpec::parse(std::string_view text) {
  for (const Alias& a : kAliases) {
    if (text == a.id) return parse(a.canonical);
  }
  const auto slash = text.find('/');
  if (text.empty()) parse_error(text, 0, "empty spec");
  if (slash == std::string_view::npos) parse_error(text, text.size(), "expected '/'");
  SpaceSpec spec;
  spec.family = std::string(text.substr(0, slash));
  if (spec.family.empty()) parse_error(text, 0, "empty family name");
  for (std::size_t i = 0; i < spec.family.size(); ++i) {
    const char c = spec.family[i];
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '-')) {
      parse_error(text, i, std::string("unexpected character '") + c + "' in family");
    }
  }
  const std::string_view rest = text.substr(slash + 1);
  if (rest.empty()) parse_error(text, slash + 1, "missing parameters");
  const bool numeric = std::isdigit(static_cast<unsigned char>(rest.front())) != 0;
  if (!numeric) {
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (!std::isalnum(static_cast<unsigned char>(rest[i]))) {
        parse_error(text, slash + 1 + i, "unexpected character in parameter token");
      }
    }
    spec.token = std::string(rest);
    return spec;
  }
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    std::size_t end = rest.find(',', pos);
    if (end == std::string_view::npos) end = rest.size();
    const std::string_view item = rest.substr(pos, end - pos);
    if (item.empty()) parse_error(text, slash + 1 + pos, "empty integer");
    int value = 0;
    for (std::size_t i = 0; i < item.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(item[i]))) {
        parse_error(text, slash + 1 + pos + i, "expected a digit");
      }
      value = value * 10 + (item[i] - '0');
      if (value > 1000) parse_error(text, slash + 1 + pos, "parameter too large");
    }
    spec.params.push_back(value);
    if (end == rest.size()) break;
    pos = end + 1;
  }
  return spec;
}

std::string SpaceSpec::canonical() const {
  return family + "/" + (token.empty() ? join_ints(params) : token);
}

CatalogSpace make_space(std::string_view id, Eigen::Index max_dim) {
  SpaceSpec spec = SpaceSpec::parse(id);
  CatalogSpace out = make_space(spec, max_dim);
  out.info.id = std::string(id);
  return out;
}

CatalogSpace make_space(const SpaceSpec& spec, Eigen::Index max_dim) {
  SpaceInfo info;
  info.canonical = spec.canonical();
  info.id = info.canonical;
  const std::string& f = spec.family;
  if (f == "so-u") return make_so_u(spec, std::move(info), max_dim);
  if (f == "su-su") return make_su_su(spec, std::move(info), max_dim);
  if (f == "sp-spu") return make_sp_spu(spec, std::move(info), max_dim);
  if (f == "sp-usp") return make_sp_usp(spec, std::move(info), max_dim);
  if (f == "wallach-so" || f == "wallach-su" || f == "wallach-sp") {
    return make_wallach(spec, std::move(info), max_dim);
  }
  if (f == "ledger-obata") return make_ledger_obata(spec, std::move(info), max_dim);
  if (f == "product-sym") return make_product_sym(spec, std::move(info), max_dim);
  throw Error(ErrorCode::UnknownSpec, "unknown space family '" + f + "'");
}

const std::vector<CatalogEntry>& list_catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    const char* ids[] = {
        "so5/u2",           "so-u/3",           "su3/su2",       "su-su/3,1",
        "su-su/3,2",        "sp2/sp1u1",        "sp-spu/2",      "so6/so2^3",
        "wallach-so/1,2,2", "su3/t2",           "wallach-su/1,1,2", "sp3/sp1^3",
        "ledger-obata/su2", "ledger-obata/so3", "product-sym/3xS2", "sp3/u2sp1",
        "su-su/2,2",
    };
    std::vector<CatalogEntry> out;
    for (const char* id : ids) {
      const CatalogSpace s = make_space(id);
      out.push_back({s.info.id, s.info.description, s.info.tags});
    }
    return out;
  }();
  return entries;
}

std::vector<CatalogEntry> filter_catalog(std::string_view filter) {
  std::vector<CatalogEntry> out;
  for (const CatalogEntry& e : list_catalog()) {
    if (filter.empty() ||
        std::any_of(e.tags.begin(), e.tags.end(),
                    [&](const std::string& t) { return t.find(filter) != std::string::npos; })) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace gospace
