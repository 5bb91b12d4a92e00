#pragma once

// JSON renderings of the library's reports. Key names are stable.

#include <json.hpp>

#include "fracsh/analysis.hpp"
#include "fracsh/classes.hpp"
#include "fracsh/decomposition.hpp"
#include "fracsh/harmonics.hpp"

namespace fracsh {

using json = nlohmann::ordered_json;

inline json to_json(const ParticleClass& pc) {
  return {{"class_id", std::string(to_string(pc.id))}, {"spins_covered", pc.spins_covered}};
}

inline json to_json(const SymmetryReport& r) {
  json j;
  j["n"] = r.n;
  j["xy_plane_symmetric"] = r.xy_plane_symmetric;
  j["xz_plane_symmetric"] = r.xz_plane_symmetric;
  j["yz_plane_symmetric"] = r.yz_plane_symmetric;
  j["yz_plane_antisymmetric"] = r.yz_plane_antisymmetric;
  j["pos_neg_overlap"] = r.pos_neg_overlap;
  j["sin_vs_cos_relation"] = std::string(to_string(r.sin_vs_cos_relation));
  j["relation_angle"] = r.relation_angle;
  j["sin_rotation_angle"] = r.sin_rotation_angle ? json(*r.sin_rotation_angle) : json(nullptr);
  j["resolution"] = r.resolution;
  j["disagreements"] = r.disagreements;
  return j;
}

inline json to_json(const ContinuityReport& r) {
  return {{"l", r.degree.to_string()},
          {"form", std::string(to_string(r.form))},
          {"closure_jump", r.closure_jump},
          {"pattern_period", r.pattern_period},
          {"delta", r.precession_angle},
          {"seam_chord_gap", r.seam_chord_gap},
          {"amplitude", r.amplitude},
          {"closes", r.closes}};
}

inline json to_json(const Verdict& v) { return {{"valid", v.valid}, {"violated", v.violated}}; }

inline json fraction_list(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(v.to_string());
  return arr;
}

inline json to_json(const DecompositionNode& node) {
  json j;
  j["spin"] = node.spin.to_string();
  j["role"] = std::string(to_string(node.role));
  if (node.spin.is_unit_fraction() && node.spin.den() >= 2)
    j["class"] = std::string(to_string(component_class(node.spin)));
  j["rule"] = std::string(to_string(node.rule));
  if (!node.children.empty()) {
    json children = json::array();
    for (const auto& c : node.children) children.push_back(to_json(c));
    j["children"] = std::move(children);
  }
  return j;
}

inline json to_json(const DecompositionTree& tree) {
  json levels = json::array();
  for (const auto& level : tree.levels) {
    json row = json::array();
    for (const auto& c : level) row.push_back(c.value.to_string());
    levels.push_back(std::move(row));
  }
  return {{"root", tree.root.spin.to_string()}, {"depth", tree.depth()}, {"levels", levels}, {"tree", to_json(tree.root)}};
}

}  // namespace fracsh
