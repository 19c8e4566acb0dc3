#include "pcqg/groupoid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace pcqg {

int CategoryData::arrow_index(const std::string& id) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].id == id) return static_cast<int>(i);
  throw std::invalid_argument("unknown arrow '" + id + "'");
}

int CategoryData::object_index(const std::string& n) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == n) return static_cast<int>(i);
  throw std::invalid_argument("unknown object '" + n + "'");
}

void CategoryData::validate() const {
  const int na = static_cast<int>(arrows.size()), no = static_cast<int>(objects.size());
  auto fail = [&](const std::string& m) { throw std::invalid_argument(name + ": " + m); };
  if (no == 0) fail("no objects");
  for (const auto& a : arrows)
    if (a.src < 0 || a.src >= no || a.tgt < 0 || a.tgt >= no) fail("arrow '" + a.id + "' has a bad endpoint");
  if (static_cast<int>(compose.size()) != na) fail("composition table has wrong size");
  for (const auto& row : compose)
    if (static_cast<int>(row.size()) != na) fail("composition table has wrong size");
  if (static_cast<int>(identity.size()) != no) fail("identity list has wrong size");
  for (int g = 0; g < na; ++g)
    for (int h = 0; h < na; ++h) {
      int gh = compose[g][h];
      bool composable = arrows[g].tgt == arrows[h].src;
      if (composable != (gh >= 0)) fail("composition defined on a non-composable pair or missing");
      if (gh >= na) fail("composition out of range");
      if (gh >= 0 && (arrows[gh].src != arrows[g].src || arrows[gh].tgt != arrows[h].tgt))
        fail("composite " + arrows[g].id + arrows[h].id + " has wrong endpoints");
    }
  for (int g = 0; g < na; ++g)
    for (int h = 0; h < na; ++h)
      for (int k = 0; k < na; ++k) {
        int gh = compose[g][h], hk = compose[h][k];
        if (gh < 0 || hk < 0) continue;
        if (compose[gh][k] != compose[g][hk]) fail("composition is not associative");
      }
  for (int o = 0; o < no; ++o) {
    int e = identity[o];
    if (e < 0 || e >= na || arrows[e].src != o || arrows[e].tgt != o) fail("bad identity for " + objects[o]);
    for (int g = 0; g < na; ++g) {
      if (arrows[g].src == o && compose[e][g] != g) fail("identity is not a left unit");
      if (arrows[g].tgt == o && compose[g][e] != g) fail("identity is not a right unit");
    }
  }
}

void GroupoidData::validate() const {
  CategoryData::validate();
  if (inverse.size() != arrows.size()) throw std::invalid_argument(name + ": inverse table has wrong size");
  for (std::size_t g = 0; g < arrows.size(); ++g) {
    int gi = inverse[g];
    if (gi < 0 || gi >= static_cast<int>(arrows.size()) || compose[g][gi] != identity[arrows[g].src] ||
        compose[gi][g] != identity[arrows[g].tgt])
      throw std::invalid_argument(name + ": arrow '" + arrows[g].id + "' has no inverse");
  }
}

nlohmann::json to_json(const CategoryData& c) {
  nlohmann::json arrows = nlohmann::json::array(), comp = nlohmann::json::array(), ids = nlohmann::json::object();
  for (const auto& a : c.arrows) arrows.push_back({{"id", a.id}, {"src", c.objects[a.src]}, {"tgt", c.objects[a.tgt]}});
  for (std::size_t g = 0; g < c.arrows.size(); ++g)
    for (std::size_t h = 0; h < c.arrows.size(); ++h)
      if (c.compose[g][h] >= 0) comp.push_back({c.arrows[g].id, c.arrows[h].id, c.arrows[c.compose[g][h]].id});
  for (std::size_t o = 0; o < c.objects.size(); ++o) ids[c.objects[o]] = c.arrows[c.identity[o]].id;
  return {{"name", c.name}, {"objects", c.objects}, {"arrows", arrows}, {"compose", comp}, {"identities", ids}};
}

nlohmann::json to_json(const GroupoidData& g) {
  auto j = to_json(static_cast<const CategoryData&>(g));
  nlohmann::json inv = nlohmann::json::object();
  for (std::size_t a = 0; a < g.arrows.size(); ++a) inv[g.arrows[a].id] = g.arrows[g.inverse[a]].id;
  j["inverse"] = inv;
  return j;
}

CategoryData category_from_json(const nlohmann::json& j) {
  CategoryData c;
  c.name = j.value("name", "category");
  c.objects = j.at("objects").get<std::vector<std::string>>();
  for (const auto& a : j.at("arrows"))
    c.arrows.push_back({a.at("id").get<std::string>(), c.object_index(a.at("src").get<std::string>()),
                        c.object_index(a.at("tgt").get<std::string>())});
  const std::size_t n = c.arrows.size();
  c.compose.assign(n, std::vector<int>(n, -1));
  for (const auto& t : j.at("compose")) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("compose entries are [g, h, gh]");
    c.compose[c.arrow_index(t[0])][c.arrow_index(t[1])] = c.arrow_index(t[2]);
  }
  c.identity.assign(c.objects.size(), -1);
  for (const auto& [obj, id] : j.at("identities").items()) c.identity[c.object_index(obj)] = c.arrow_index(id);
  c.validate();
  return c;
}

GroupoidData groupoid_from_json(const nlohmann::json& j) {
  GroupoidData g;
  static_cast<CategoryData&>(g) = category_from_json(j);
  g.inverse.assign(g.arrows.size(), -1);
  if (!j.contains("inverse")) throw std::invalid_argument(g.name + ": missing inverse table");
  for (const auto& [a, b] : j.at("inverse").items()) g.inverse[g.arrow_index(a)] = g.arrow_index(b);
  g.validate();
  return g;
}

namespace {

// One-object groupoid from a group multiplication table.
GroupoidData group_groupoid(const std::string& name, const std::vector<std::string>& ids,
                            const std::vector<std::vector<int>>& table, int unit) {
  GroupoidData g;
  g.name = name;
  g.objects = {"*"};
  for (const auto& id : ids) g.arrows.push_back({id, 0, 0});
  g.compose = table;
  g.identity = {unit};
  const int n = static_cast<int>(ids.size());
  g.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] == unit) g.inverse[a] = b;
  g.validate();
  return g;
}

}  // namespace

GroupoidData pair_groupoid(int n) {
  GroupoidData g;
  g.name = "pair" + std::to_string(n);
  for (int i = 0; i < n; ++i) g.objects.push_back(std::to_string(i + 1));
  auto idx = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.arrows.push_back({"(" + g.objects[i] + "," + g.objects[j] + ")", i, j});
  const int na = n * n;
  g.compose.assign(na, std::vector<int>(na, -1));
  g.inverse.assign(na, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.inverse[idx(i, j)] = idx(j, i);
      for (int k = 0; k < n; ++k) g.compose[idx(i, j)][idx(j, k)] = idx(i, k);
    }
  for (int i = 0; i < n; ++i) g.identity.push_back(idx(i, i));
  g.validate();
  return g;
}

GroupoidData cyclic_group(int n) {
  std::vector<std::string> ids;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    ids.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return group_groupoid("Z" + std::to_string(n), ids, t, 0);
}

namespace {

using Perm = std::array<int, 3>;

std::vector<Perm> s3_elements() {
  std::vector<Perm> out;
  Perm p{0, 1, 2};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

GroupoidData symmetric_group3() {
  auto els = s3_elements();
  std::vector<std::string> ids;
  for (const auto& p : els) ids.push_back(std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]));
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      Perm c{els[a][els[b][0]], els[a][els[b][1]], els[a][els[b][2]]};  // (ab)(i) = a(b(i))
      t[a][b] = static_cast<int>(std::find(els.begin(), els.end(), c) - els.begin());
    }
  return group_groupoid("S3", ids, t, 0);
}

GroupoidData trivial_group() { return group_groupoid("trivial", {"e"}, {{0}}, 0); }

GroupoidData product_groupoid(const GroupoidData& a, const GroupoidData& b) {
  GroupoidData g;
  g.name = a.name + "x" + b.name;
  const int nb = static_cast<int>(b.objects.size()), mb = static_cast<int>(b.arrows.size());
  for (const auto& oa : a.objects)
    for (const auto& ob : b.objects) g.objects.push_back(oa + "|" + ob);
  for (const auto& x : a.arrows)
    for (const auto& y : b.arrows) g.arrows.push_back({x.id + "|" + y.id, x.src * nb + y.src, x.tgt * nb + y.tgt});
  const int n = static_cast<int>(g.arrows.size());
  g.compose.assign(n, std::vector<int>(n, -1));
  g.inverse.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int xi = i / mb, yi = i % mb;
    g.inverse[i] = a.inverse[xi] * mb + b.inverse[yi];
    for (int j = 0; j < n; ++j) {
      int xj = j / mb, yj = j % mb;
      int x = a.compose[xi][xj], y = b.compose[yi][yj];
      if (x >= 0 && y >= 0) g.compose[i][j] = x * mb + y;
    }
  }
  for (std::size_t oa = 0; oa < a.objects.size(); ++oa)
    for (int ob = 0; ob < nb; ++ob) g.identity.push_back(a.identity[oa] * mb + b.identity[ob]);
  g.validate();
  return g;
}

GroupoidData disjoint_union(const GroupoidData& a, const GroupoidData& b) {
  GroupoidData g;
  g.name = a.name + "+" + b.name;
  const int oa = static_cast<int>(a.objects.size()), ma = static_cast<int>(a.arrows.size());
  for (const auto& o : a.objects) g.objects.push_back("L" + o);
  for (const auto& o : b.objects) g.objects.push_back("R" + o);
  for (const auto& x : a.arrows) g.arrows.push_back({"L" + x.id, x.src, x.tgt});
  for (const auto& y : b.arrows) g.arrows.push_back({"R" + y.id, y.src + oa, y.tgt + oa});
  const int n = static_cast<int>(g.arrows.size());
  g.compose.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < ma; ++i)
    for (int j = 0; j < ma; ++j) g.compose[i][j] = a.compose[i][j];
  for (int i = ma; i < n; ++i)
    for (int j = ma; j < n; ++j) {
      int c = b.compose[i - ma][j - ma];
      g.compose[i][j] = c < 0 ? -1 : c + ma;
    }
  for (int i = 0; i < ma; ++i) g.inverse.push_back(a.inverse[i]);
  for (int v : b.inverse) g.inverse.push_back(v + ma);
  for (int v : a.identity) g.identity.push_back(v);
  for (int v : b.identity) g.identity.push_back(v + ma);
  g.validate();
  return g;
}

CategoryData raum_category() {
  CategoryData c;
  c.name = "raum";
  c.objects = {"1", "2"};
  c.arrows = {{"id1", 0, 0}, {"id2", 1, 1}, {"a", 0, 1}};
  c.compose.assign(3, std::vector<int>(3, -1));
  c.compose[0][0] = 0;
  c.compose[1][1] = 1;
  c.compose[0][2] = 2;
  c.compose[2][1] = 2;
  c.identity = {0, 1};
  c.validate();
  return c;
}

GroupoidRep trivial_groupoid_rep(const GroupoidData& g) {
  GroupoidRep r;
  r.dim.assign(g.objects.size(), 1);
  r.pi.assign(g.arrows.size(), Eigen::MatrixXd::Identity(1, 1));
  return r;
}

GroupoidRep sign_rep_z2() {
  GroupoidRep r;
  r.dim = {1};
  r.pi = {Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::MatrixXd::Constant(1, 1, -1.0)};
  return r;
}

GroupoidRep standard_rep_s3_pair(const GroupoidData& g) {
  auto els = s3_elements();
  Eigen::MatrixXd B(3, 2);
  B << 1 / std::sqrt(2.0), 1 / std::sqrt(6.0), -1 / std::sqrt(2.0), 1 / std::sqrt(6.0), 0, -2 / std::sqrt(6.0);
  const int mb = static_cast<int>(g.arrows.size() / els.size());
  GroupoidRep r;
  r.dim.assign(g.objects.size(), 2);
  for (std::size_t a = 0; a < g.arrows.size(); ++a) {
    const Perm& p = els[a / mb];
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) P(p[i], i) = 1;
    r.pi.push_back(B.transpose() * P * B);
  }
  return r;
}

double groupoid_rep_defect(const GroupoidData& g, const GroupoidRep& r) {
  double worst = 0;
  for (std::size_t a = 0; a < g.arrows.size(); ++a)
    for (std::size_t b = 0; b < g.arrows.size(); ++b) {
      int ab = g.compose[a][b];
      if (ab < 0) continue;
      worst = std::max(worst, (r.pi[ab] - r.pi[a] * r.pi[b]).cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace pcqg
