#include "ckh/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ckh {

namespace {

DenseMatrix identity(size_t n) {
  DenseMatrix I(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

struct Smith {
  DenseMatrix a, U, V;
  size_t m, n;
  bool track;

  void row_swap(size_t i, size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (track) std::swap(U[i], U[j]);
  }
  void col_swap(size_t i, size_t j) {
    if (i == j) return;
    for (auto& r : a) std::swap(r[i], r[j]);
    if (track)
      for (auto& r : V) std::swap(r[i], r[j]);
  }
  // row_i -= q * row_j
  void row_sub(size_t i, size_t j, const Int& q) {
    if (q == 0) return;
    for (size_t k = 0; k < n; ++k)
      if (a[j][k] != 0) a[i][k] -= q * a[j][k];
    if (track)
      for (size_t k = 0; k < m; ++k)
        if (U[j][k] != 0) U[i][k] -= q * U[j][k];
  }
  // col_i -= q * col_j
  void col_sub(size_t i, size_t j, const Int& q) {
    if (q == 0) return;
    for (size_t k = 0; k < m; ++k)
      if (a[k][j] != 0) a[k][i] -= q * a[k][j];
    if (track)
      for (size_t k = 0; k < n; ++k)
        if (V[k][j] != 0) V[k][i] -= q * V[k][j];
  }
  void row_neg(size_t i) {
    for (auto& x : a[i]) x = -x;
    if (track)
      for (auto& x : U[i]) x = -x;
  }

  bool min_entry(size_t t, size_t& pi, size_t& pj) {
    bool found = false;
    Int best;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j) {
        if (a[i][j] == 0) continue;
        Int v = abs(a[i][j]);
        if (!found || v < best) {
          best = v;
          pi = i;
          pj = j;
          found = true;
          if (best == 1) return true;
        }
      }
    return found;
  }

  void run() {
    size_t t = 0;
    while (t < m && t < n) {
      size_t pi, pj;
      if (!min_entry(t, pi, pj)) break;
      row_swap(t, pi);
      col_swap(t, pj);
      for (;;) {
        bool dirty = false;
        for (size_t i = t + 1; i < m; ++i) {
          if (a[i][t] == 0) continue;
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          row_sub(i, t, q);
          if (a[i][t] != 0) dirty = true;
        }
        for (size_t j = t + 1; j < n; ++j) {
          if (a[t][j] == 0) continue;
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          col_sub(j, t, q);
          if (a[t][j] != 0) dirty = true;
        }
        if (dirty) {
          // move the smallest remaining entry of row/column t to the pivot
          size_t bi = t, bj = t;
          Int best = abs(a[t][t]);
          for (size_t i = t + 1; i < m; ++i)
            if (a[i][t] != 0 && abs(a[i][t]) < best) best = abs(a[i][t]), bi = i, bj = t;
          for (size_t j = t + 1; j < n; ++j)
            if (a[t][j] != 0 && abs(a[t][j]) < best) best = abs(a[t][j]), bi = t, bj = j;
          row_swap(t, bi);
          col_swap(t, bj);
          continue;
        }
        // divisibility of the remaining block
        bool fixed = false;
        for (size_t i = t + 1; i < m && !fixed; ++i)
          for (size_t j = t + 1; j < n; ++j)
            if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
              row_sub(t, i, -1);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (a[t][t] < 0) row_neg(t);
      ++t;
    }
  }
};

}  // namespace

SmithResult smith_normal_form(const DenseMatrix& A, bool with_transforms) {
  Smith s;
  s.a = A;
  s.m = A.size();
  s.n = s.m ? A[0].size() : 0;
  s.track = with_transforms;
  if (with_transforms) {
    s.U = identity(s.m);
    s.V = identity(s.n);
  }
  s.run();
  SmithResult r;
  for (size_t t = 0; t < std::min(s.m, s.n); ++t)
    if (s.a[t][t] != 0) r.invariant_factors.push_back(s.a[t][t]);
  r.D = std::move(s.a);
  r.U = std::move(s.U);
  r.V = std::move(s.V);
  return r;
}

DenseMatrix mat_mul(const DenseMatrix& A, const DenseMatrix& B) {
  size_t m = A.size(), k = B.size(), n = k ? B[0].size() : 0;
  DenseMatrix C(m, std::vector<Int>(n, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (size_t j = 0; j < n; ++j)
        if (B[l][j] != 0) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

Int determinant(DenseMatrix A) {
  // Bareiss fraction-free elimination.
  size_t n = A.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && A[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(A[k], A[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        A[i][j] = A[i][j] * A[k][k] - A[i][k] * A[k][j];
        mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = A[k][k];
  }
  return sign * A[n - 1][n - 1];
}

namespace {

// Rank and nontrivial invariant factors of a sparse matrix given as columns.
struct SparseReduce {
  std::vector<Chain> rows;
  std::vector<std::set<int>> cols;
  int rank = 0;
  std::vector<Int> torsion;

  void run() {
    int nr = static_cast<int>(rows.size());
    std::vector<char> dead(nr, 0);
    bool progress = true;
    while (progress) {
      progress = false;
      for (int r = 0; r < nr; ++r) {
        if (dead[r] || rows[r].empty()) continue;
        int pc = -1;
        size_t best = 0;
        for (const auto& [c, v] : rows[r])
          if (abs(v) == 1 && (pc < 0 || cols[c].size() < best)) pc = c, best = cols[c].size();
        if (pc < 0) continue;
        Int u = rows[r][pc];
        std::vector<int> others(cols[pc].begin(), cols[pc].end());
        for (int o : others) {
          if (o == r) continue;
          Int f = rows[o][pc] * u;
          for (const auto& [c, v] : rows[r]) {
            Int nv = rows[o][c] - f * v;
            if (nv == 0) {
              rows[o].erase(c);
              cols[c].erase(o);
            } else {
              rows[o][c] = nv;
              cols[c].insert(o);
            }
          }
        }
        for (const auto& [c, v] : rows[r]) cols[c].erase(r);
        rows[r].clear();
        dead[r] = 1;
        ++rank;
        progress = true;
      }
    }
    std::vector<int> rr, cc;
    std::map<int, int> cidx;
    for (int r = 0; r < nr; ++r)
      if (!rows[r].empty()) {
        rr.push_back(r);
        for (const auto& [c, v] : rows[r]) cidx.emplace(c, 0);
      }
    if (rr.empty()) return;
    int k = 0;
    for (auto& [c, i] : cidx) i = k++;
    DenseMatrix M(rr.size(), std::vector<Int>(cidx.size(), 0));
    for (size_t i = 0; i < rr.size(); ++i)
      for (const auto& [c, v] : rows[rr[i]]) M[i][cidx[c]] = v;
    auto s = smith_normal_form(M);
    rank += static_cast<int>(s.invariant_factors.size());
    for (const auto& f : s.invariant_factors)
      if (f != 1) torsion.push_back(f);
  }
};

}  // namespace

HomologyTable bigraded_homology(const BigradedComplex& C) {
  if (!is_differential(C)) throw DifferentialError("d^2 != 0");
  // group generators by bidegree
  std::map<Bigrading, std::vector<int>> by;
  for (int i = 0; i < C.size(); ++i) by[C.grading[i]].push_back(i);
  // rank/torsion of d out of each bidegree
  std::map<Bigrading, std::pair<int, std::vector<Int>>> dout;
  for (const auto& [g, gens] : by) {
    Bigrading tg{g.h + 1, g.q2};
    auto it = by.find(tg);
    if (it == by.end()) {
      dout[g] = {0, {}};
      continue;
    }
    std::map<int, int> ridx;
    for (size_t i = 0; i < it->second.size(); ++i) ridx[it->second[i]] = static_cast<int>(i);
    SparseReduce sr;
    sr.rows.resize(it->second.size());
    sr.cols.resize(gens.size());
    for (size_t j = 0; j < gens.size(); ++j)
      for (const auto& [t, v] : C.d[gens[j]]) {
        auto rit = ridx.find(t);
        if (rit == ridx.end()) throw std::logic_error("differential leaves bidegree");
        sr.rows[rit->second][static_cast<int>(j)] = v;
        sr.cols[j].insert(rit->second);
      }
    sr.run();
    dout[g] = {sr.rank, sr.torsion};
  }
  HomologyTable out;
  for (const auto& [g, gens] : by) {
    HomologyGroup hg;
    int rin = 0;
    std::vector<Int> tor;
    auto pit = dout.find(Bigrading{g.h - 1, g.q2});
    if (pit != dout.end()) {
      rin = pit->second.first;
      tor = pit->second.second;
    }
    hg.free_rank = static_cast<int>(gens.size()) - dout[g].first - rin;
    std::sort(tor.begin(), tor.end());
    hg.torsion = tor;
    if (hg.free_rank != 0 || !hg.torsion.empty()) out[g] = hg;
  }
  return out;
}

bool is_differential(const BigradedComplex& C) {
  for (int i = 0; i < C.size(); ++i) {
    Chain dd;
    for (const auto& [j, v] : C.d[i]) chain_axpy(dd, v, C.d[j]);
    if (!dd.empty()) return false;
  }
  return true;
}

std::string homology_to_string(const HomologyTable& t) {
  std::ostringstream os;
  for (const auto& [g, hg] : t) {
    os << "(" << g.h << "," << q2_string(g.q2) << "):";
    if (hg.free_rank) os << " Z^" << hg.free_rank;
    for (const auto& f : hg.torsion) os << " Z/" << f;
    os << "\n";
  }
  return os.str();
}

}  // namespace ckh
