#include "ckh/tangle.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace ckh {

namespace {

struct ParityUF {
  std::vector<int> parent, parity;  // parity relative to parent: 1 means opposite
  std::vector<int> value;           // on roots: 0 unset, else +-1
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    parity.push_back(0);
    value.push_back(0);
    return parent.back();
  }
  std::pair<int, int> find(int x) {
    int p = 0;
    while (parent[x] != x) {
      p ^= parity[x];
      x = parent[x];
    }
    return {x, p};
  }
  void relate(int a, int b, bool opposite) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    int want = opposite ? 1 : 0;
    if (ra == rb) {
      if ((pa ^ pb) != want) throw ParseError("inconsistent orientation");
      return;
    }
    int rel = pa ^ pb ^ want;
    int vb = value[rb];
    parent[rb] = ra;
    parity[rb] = rel;
    if (vb) {
      int implied = rel ? -vb : vb;
      if (value[ra] && value[ra] != implied) throw ParseError("inconsistent orientation");
      value[ra] = implied;
    }
  }
  void set(int a, int v) {
    auto [r, p] = find(a);
    int rv = p ? -v : v;
    if (value[r] && value[r] != rv) throw ParseError("inconsistent orientation");
    value[r] = rv;
  }
  int get(int a) {
    auto [r, p] = find(a);
    return p ? -value[r] : value[r];
  }
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

int parse_int(const std::string& s) {
  std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("expected integer, got '" + s + "'");
  return std::stoi(t);
}

}  // namespace

TangleDiagram build_tangle(HalfSide side, int n, std::vector<Slice> slices, std::vector<int> orient) {
  if (n < 0) throw ParseError("negative n");
  if (!orient.empty() && static_cast<int>(orient.size()) != 2 * n) throw ParseError("orient length must be 2n");
  TangleDiagram t;
  t.side = side;
  t.n = n;
  t.slices = std::move(slices);
  t.num_nodes = 2 * n;
  ParityUF uf;
  std::vector<int> open;
  auto new_piece = [&](int start) {
    t.pieces.push_back({start, -1});
    uf.add();
    return static_cast<int>(t.pieces.size()) - 1;
  };
  for (int k = 0; k < 2 * n; ++k) open.push_back(new_piece(k));
  if (!orient.empty())
    for (int k = 0; k < 2 * n; ++k) {
      if (orient[k] != 1 && orient[k] != -1) throw ParseError("orientation must be + or -");
      uf.set(open[k], orient[k]);
    }
  std::vector<std::pair<int, int>> cup_pieces;
  std::vector<std::pair<int, int>> cross_pieces;
  for (size_t si = 0; si < t.slices.size(); ++si) {
    const auto& sl = t.slices[si];
    int cnt = static_cast<int>(open.size());
    int i = sl.pos;
    switch (sl.kind) {
      case Slice::Cap: {
        if (i < 0 || i + 1 >= cnt) throw ParseError("cap index out of range");
        int node = t.num_nodes++;
        t.pieces[open[i]].second = node;
        t.pieces[open[i + 1]].second = node;
        uf.relate(open[i], open[i + 1], true);
        open.erase(open.begin() + i, open.begin() + i + 2);
        break;
      }
      case Slice::Cup: {
        if (i < 0 || i > cnt) throw ParseError("cup index out of range");
        int node = t.num_nodes++;
        int a = new_piece(node), b = new_piece(node);
        uf.relate(a, b, true);
        if (sl.cup_dir) uf.set(a, sl.cup_dir);
        open.insert(open.begin() + i, {a, b});
        cup_pieces.push_back({a, b});
        break;
      }
      case Slice::Cross: {
        if (i < 0 || i + 1 >= cnt) throw ParseError("cross index out of range");
        Crossing c;
        c.slice = static_cast<int>(si);
        c.pos = i;
        c.L0 = t.num_nodes++;
        c.H0 = t.num_nodes++;
        c.L1 = t.num_nodes++;
        c.H1 = t.num_nodes++;
        int pl = open[i], ph = open[i + 1];
        t.pieces[pl].second = c.L0;
        t.pieces[ph].second = c.H0;
        int nl = new_piece(c.L1), nh = new_piece(c.H1);
        uf.relate(pl, nl, false);
        uf.relate(ph, nh, false);
        open[i] = nh;
        open[i + 1] = nl;
        cross_pieces.push_back({pl, ph});
        t.crossings.push_back(c);
        break;
      }
    }
  }
  if (!open.empty()) throw ParseError("strand count does not return to zero");
  // default orientations
  if (orient.empty()) {
    for (int k = 0; k < 2 * n; ++k)
      if (uf.get(k) == 0) uf.set(k, side == HalfSide::Inside ? 1 : -1);
  }
  for (auto [a, b] : cup_pieces)
    if (uf.get(a) == 0) uf.set(a, 1);
  for (size_t p = 0; p < t.pieces.size(); ++p) {
    int v = uf.get(static_cast<int>(p));
    if (v == 0) throw ParseError("unoriented strand");
    t.piece_dir.push_back(v);
  }
  t.orient.assign(2 * n, 0);
  for (int k = 0; k < 2 * n; ++k) t.orient[k] = t.piece_dir[k];

  for (size_t ci = 0; ci < t.crossings.size(); ++ci) {
    auto& c = t.crossings[ci];
    const auto& sl = t.slices[c.slice];
    int dl = t.piece_dir[cross_pieces[ci].first], dh = t.piece_dir[cross_pieces[ci].second];
    int xs = side == HalfSide::Outside ? 1 : -1;
    long lx = xs * dl, ly = dl, hx = xs * dh, hy = -dh;
    long ox = sl.low_over ? lx : hx, oy = sl.low_over ? ly : hy;
    long ux = sl.low_over ? hx : lx, uy = sl.low_over ? hy : ly;
    long z = ox * uy - oy * ux;
    // axis positions are numbered top to bottom
    c.sign = z > 0 ? -1 : 1;
    c.zero_turnback = (side == HalfSide::Outside) != sl.low_over;
    bool oriented0 = c.zero_turnback ? (dl != dh) : (dl == dh);
    if (oriented0 != (c.sign > 0)) throw std::logic_error("smoothing convention inconsistent with sign");
    if (sl.claimed_sign && sl.claimed_sign != c.sign)
      throw ParseError("crossing " + std::to_string(ci + 1) + " has sign " + (c.sign > 0 ? "+" : "-") +
                       " but was written " + (sl.claimed_sign > 0 ? "+" : "-"));
    (c.sign > 0 ? t.n_plus : t.n_minus)++;
  }
  return t;
}

TangleDiagram parse_tangle(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("missing ':'");
  std::istringstream hs(text.substr(0, colon));
  std::string word;
  HalfSide side;
  int n = -1;
  std::vector<int> orient;
  if (!(hs >> word)) throw ParseError("empty header");
  if (word == "inside") side = HalfSide::Inside;
  else if (word == "outside") side = HalfSide::Outside;
  else throw ParseError("header must start with inside or outside");
  while (hs >> word) {
    if (word.rfind("n=", 0) == 0) {
      n = parse_int(word.substr(2));
    } else if (word.rfind("orient=", 0) == 0) {
      for (char ch : word.substr(7)) {
        if (ch == '+') orient.push_back(1);
        else if (ch == '-') orient.push_back(-1);
        else throw ParseError("bad orientation character");
      }
    } else {
      throw ParseError("unknown header field '" + word + "'");
    }
  }
  if (n < 0) throw ParseError("missing n=");
  std::vector<Slice> slices;
  std::string body = text.substr(colon + 1);
  std::vector<std::string> toks;
  int depth = 0;
  std::string cur;
  for (char ch : body) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses");
    if (ch == ',' && depth == 0) {
      toks.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses");
  if (!trim(cur).empty() || !toks.empty()) toks.push_back(trim(cur));
  for (const auto& tok : toks) {
    auto lp = tok.find('('), rp = tok.rfind(')');
    if (lp == std::string::npos || rp != tok.size() - 1) throw ParseError("bad slice '" + tok + "'");
    std::string name = trim(tok.substr(0, lp));
    std::string args = tok.substr(lp + 1, rp - lp - 1);
    std::string a1 = args, a2;
    auto comma = args.find(',');
    if (comma != std::string::npos) {
      a1 = args.substr(0, comma);
      a2 = trim(args.substr(comma + 1));
    }
    Slice s{};
    s.pos = parse_int(a1) - 1;
    int mark = 0;
    if (!a2.empty()) {
      if (a2 == "+") mark = 1;
      else if (a2 == "-") mark = -1;
      else throw ParseError("bad slice argument '" + a2 + "'");
    }
    if (name == "cap") {
      if (mark) throw ParseError("cap takes one argument");
      s.kind = Slice::Cap;
    } else if (name == "cup") {
      s.kind = Slice::Cup;
      s.cup_dir = mark;
    } else if (name == "cross" || name == "crossneg") {
      s.kind = Slice::Cross;
      s.low_over = name == "cross";
      s.claimed_sign = mark;
    } else {
      throw ParseError("unknown slice '" + name + "'");
    }
    slices.push_back(s);
  }
  return build_tangle(side, n, std::move(slices), orient);
}

std::string TangleDiagram::to_string() const {
  std::ostringstream os;
  os << (side == HalfSide::Inside ? "inside" : "outside") << " n=" << n;
  if (n > 0) {
    os << " orient=";
    for (int v : orient) os << (v > 0 ? '+' : '-');
  }
  os << " :";
  size_t ci = 0;
  std::vector<int> piece_of_cup;
  for (size_t i = 0; i < slices.size(); ++i) {
    const auto& s = slices[i];
    os << (i ? ", " : " ");
    switch (s.kind) {
      case Slice::Cap: os << "cap(" << s.pos + 1 << ")"; break;
      case Slice::Cup: os << "cup(" << s.pos + 1 << (s.cup_dir > 0 ? ",+" : s.cup_dir < 0 ? ",-" : "") << ")"; break;
      case Slice::Cross:
        os << (s.low_over ? "cross(" : "crossneg(") << s.pos + 1 << "," << (crossings[ci].sign > 0 ? "+" : "-") << ")";
        ++ci;
        break;
    }
  }
  return os.str();
}

TangleComplex::TangleComplex(TangleDiagram t, int crossing_cap) : t_(std::move(t)) {
  if (t_.crossing_count() > crossing_cap) throw CapError("crossing count exceeds cap");
  if (t_.n > 3) throw CapError("n exceeds algebra cap");
  alg_ = &Algebra::get(t_.n);
  int C = t_.crossing_count();
  unsigned R = 1u << C;
  res_.resize(R);
  tangle_match_.resize(R);
  for (unsigned rho = 0; rho < R; ++rho) {
    std::vector<int> par(t_.num_nodes);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
      while (par[x] != x) x = par[x] = par[par[x]];
      return x;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a < b) std::swap(a, b);
      par[a] = b;
    };
    for (auto [a, b] : t_.pieces) unite(a, b);
    for (int c = 0; c < C; ++c) {
      const auto& X = t_.crossings[c];
      bool turn = X.zero_turnback != static_cast<bool>(rho >> c & 1u);
      if (turn) {
        unite(X.L0, X.H0);
        unite(X.L1, X.H1);
      } else {
        unite(X.L0, X.H1);
        unite(X.H0, X.L1);
      }
    }
    auto& ri = res_[rho];
    ri.comp_of_node.resize(t_.num_nodes);
    for (int v = 0; v < t_.num_nodes; ++v) ri.comp_of_node[v] = find(v);  // roots are smallest nodes
    ri.arcs.assign(2 * t_.n, -1);
    std::map<int, std::vector<int>> axis_of;
    for (int k = 0; k < 2 * t_.n; ++k) axis_of[ri.comp_of_node[k]].push_back(k);
    for (const auto& [comp, pts] : axis_of) {
      if (pts.size() != 2) throw std::logic_error("arc component without two endpoints");
      ri.arcs[pts[0]] = pts[1];
      ri.arcs[pts[1]] = pts[0];
      ri.arc_of_comp[comp] = pts[0];
    }
    std::set<int> roots(ri.comp_of_node.begin(), ri.comp_of_node.end());
    for (int r : roots)
      if (!axis_of.count(r)) {
        ri.free_index[r] = static_cast<int>(ri.free_ids.size());
        ri.free_ids.push_back(r);
      }
    tangle_match_[rho] = alg_->matchings().index(ri.arcs);
  }
  int M = alg_->matchings().size();
  for (unsigned rho = 0; rho < R; ++rho)
    for (int m = 0; m < M; ++m) {
      int li = link_of(rho, m);
      int nc = alg_->links()[li].circ.count;
      int nf = static_cast<int>(res_[rho].free_ids.size());
      for (unsigned s = 0; s < (1u << nc); ++s)
        for (unsigned f = 0; f < (1u << nf); ++f) states_.push_back({rho, m, f, alg_->idem_index(li, s)});
    }
  std::sort(states_.begin(), states_.end());
  for (size_t i = 0; i < states_.size(); ++i) index_[states_[i]] = static_cast<int>(i);
}

int TangleComplex::link_of(unsigned rho, int closure) const {
  int tm = tangle_match_[rho];
  return t_.side == HalfSide::Inside ? alg_->link_index(tm, closure) : alg_->link_index(closure, tm);
}

int TangleComplex::state_index(const State& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw std::logic_error("unknown state");
  return it->second;
}

int TangleComplex::find_state(const State& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

int TangleComplex::raw_h(int x) const { return std::popcount(states_[x].rho); }

Bigrading TangleComplex::grading(int x) const {
  const auto& s = states_[x];
  int h = std::popcount(s.rho);
  int nf = static_cast<int>(res_[s.rho].free_ids.size());
  int qf = 2 * std::popcount(s.free_bits) - nf;
  int q2 = 2 * h + 2 * qf + alg_->idem_iota(s.idem) + 2 * t_.n_plus - 4 * t_.n_minus;
  return {h - t_.n_minus, q2};
}

int TangleComplex::cleaved_circle(unsigned rho, int closure, int arc_point) const {
  return alg_->links()[link_of(rho, closure)].circ.of_point[arc_point];
}

std::string TangleComplex::state_label(int x) const {
  const auto& s = states_[x];
  std::string r = "r=";
  for (int c = 0; c < t_.crossing_count(); ++c) r += (s.rho >> c & 1u) ? '1' : '0';
  r += " m=" + std::to_string(s.closure) + " f=";
  int nf = static_cast<int>(res_[s.rho].free_ids.size());
  for (int i = 0; i < nf; ++i) r += (s.free_bits >> i & 1u) ? '+' : '-';
  r += " c=";
  const auto& I = alg_->idempotents()[s.idem];
  for (int i = 0; i < alg_->links()[I.link].circ.count; ++i) r += (I.sigma >> i & 1u) ? '+' : '-';
  return r;
}

}  // namespace ckh

namespace ckh {

std::pair<TangleComplex::Foot, TangleComplex::Foot> TangleComplex::feet(unsigned rho, int c) const {
  const auto& X = t_.crossings[c];
  const auto& ri = res_[rho];
  int a = X.L0, b = X.zero_turnback ? X.L1 : X.H0;
  auto foot = [&](int node) {
    int comp = ri.comp_of_node[node];
    auto it = ri.free_index.find(comp);
    if (it != ri.free_index.end()) return Foot{true, it->second};
    return Foot{false, ri.arc_of_comp.at(comp)};
  };
  return {foot(a), foot(b)};
}

TangleComplex::Surgered TangleComplex::surger(unsigned rho, unsigned free_bits, int c) const {
  const auto& X = t_.crossings[c];
  Surgered s;
  s.rho = rho | (1u << c);
  s.carried = 0;
  const auto& r0 = res_[rho];
  const auto& r1 = res_[s.rho];
  std::set<int> touched{r1.comp_of_node[X.L0], r1.comp_of_node[X.H0], r1.comp_of_node[X.L1],
                        r1.comp_of_node[X.H1]};
  for (size_t i = 0; i < r1.free_ids.size(); ++i) {
    int id = r1.free_ids[i];
    if (touched.count(id)) {
      s.fresh.push_back(static_cast<int>(i));
      continue;
    }
    int old = r0.free_index.at(id);
    if (free_bits >> old & 1u) s.carried |= 1u << i;
  }
  return s;
}

}  // namespace ckh
