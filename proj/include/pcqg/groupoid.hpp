#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "json.hpp"

namespace pcqg {

// Finite category with arrows g: src -> tgt; gh is defined when tgt(g) == src(h).
struct CategoryData {
  struct Arrow {
    std::string id;
    int src = 0, tgt = 0;
  };
  std::string name;
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> compose;  // compose[g][h] = gh, or -1
  std::vector<int> identity;              // per object

  int arrow_index(const std::string& id) const;
  int object_index(const std::string& name) const;
  // Throws std::invalid_argument on malformed tables.
  void validate() const;
};

struct GroupoidData : CategoryData {
  std::vector<int> inverse;
  void validate() const;
};

nlohmann::json to_json(const CategoryData& c);
nlohmann::json to_json(const GroupoidData& g);
GroupoidData groupoid_from_json(const nlohmann::json& j);
CategoryData category_from_json(const nlohmann::json& j);

GroupoidData pair_groupoid(int n);
GroupoidData cyclic_group(int n);
GroupoidData symmetric_group3();
GroupoidData trivial_group();
// Arrows (g, h) with componentwise composition.
GroupoidData product_groupoid(const GroupoidData& a, const GroupoidData& b);
GroupoidData disjoint_union(const GroupoidData& a, const GroupoidData& b);
// Objects 1, 2, their identities and one arrow 1 -> 2.
CategoryData raum_category();

// Matrices pi(g): C^{dim[tgt g]} -> C^{dim[src g]} with pi(gh) = pi(g) pi(h).
struct GroupoidRep {
  std::vector<int> dim;
  std::vector<Eigen::MatrixXd> pi;
};

GroupoidRep trivial_groupoid_rep(const GroupoidData& g);
GroupoidRep sign_rep_z2();
// 2-dimensional standard representation of S3 carried along the pair-groupoid factor.
GroupoidRep standard_rep_s3_pair(const GroupoidData& s3_times_pair);
double groupoid_rep_defect(const GroupoidData& g, const GroupoidRep& r);

}  // namespace pcqg
