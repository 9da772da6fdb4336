#include "ddstc/json_io.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace ddstc {

namespace {

using nlohmann::json;

json entry_json(double re, double im) { return json{{"re", re}, {"im", im}}; }

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(entry_json(m(r, c).real(), m(r, c).imag()));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ExactMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(entry_json(static_cast<double>(m(r, c).re), static_cast<double>(m(r, c).im)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(entry_json(v(i).real(), v(i).imag()));
  return out;
}

std::string dump(const json& j, int indent) { return indent < 0 ? j.dump() : j.dump(indent); }

}  // namespace

std::string matrix_to_json(const Eigen::MatrixXcd& m, int indent) { return dump(to_json(m), indent); }

std::string matrix_to_json(const ExactMatrix& m, int indent) { return dump(to_json(m), indent); }

std::string construction_to_json(const LinearDesign& design, const RelaySet& rs,
                                 const InitialState& init, int indent) {
  json out;
  out["relays"] = design.relay_count();
  out["half"] = rs.half;
  out["variables"] = design.variable_count();
  out["linker_family"] = rs.family == LinkerFamily::Gamma2 ? "g2" : "g1g2";

  json pattern = json::array();
  for (const auto& row : design.pattern()) {
    json jrow = json::array();
    for (const PatternEntry& e : row) jrow.push_back(e.to_string());
    pattern.push_back(std::move(jrow));
  }
  json weights = json::array();
  for (const ExactMatrix& w : design.weights()) weights.push_back(to_json(w));
  out["design"] = json{{"pattern", std::move(pattern)}, {"weight_matrices", std::move(weights)}};

  json relays = json::array();
  for (int i = 0; i < rs.relay_count(); ++i) {
    relays.push_back(json{{"element", rs.elements[static_cast<std::size_t>(i)].to_string()},
                          {"conjugates_input", i >= rs.half},
                          {"matrix", to_json(rs.matrices[static_cast<std::size_t>(i)])}});
  }
  out["relay_matrices"] = std::move(relays);
  out["s0"] = to_json(init.s0);
  out["X0"] = to_json(init.X0);
  return dump(out, indent);
}

std::string codebook_to_json(const Codebook& cb, int indent) {
  json out;
  out["relays"] = cb.design().relay_count();
  json partition = json::array();
  for (const auto& g : cb.partition().groups) partition.push_back(g);
  out["partition"] = std::move(partition);
  json sets = json::array();
  for (const GroupSignalSet& s : cb.group_sets())
    sets.push_back(json{{"dim", s.dim}, {"points", s.points}});
  out["group_sets"] = std::move(sets);
  out["normalization"] = cb.normalization();
  json entries = json::array();
  for (const CodebookEntry& e : cb.entries())
    entries.push_back(json{{"x", e.symbols}, {"scale", e.scale}, {"group_points", e.group_points}});
  out["entries"] = std::move(entries);
  return dump(out, indent);
}

Codebook codebook_from_json(const std::string& text) {
  const json in = json::parse(text);
  const int relays = in.at("relays").get<int>();
  GroupPartition partition;
  const json& jpart = in.at("partition");
  if (jpart.size() != 4) throw std::invalid_argument("codebook JSON: expected four groups");
  for (std::size_t g = 0; g < 4; ++g) partition.groups[g] = jpart[g].get<std::vector<int>>();
  std::vector<GroupSignalSet> sets;
  for (const json& js : in.at("group_sets")) {
    GroupSignalSet s;
    s.dim = js.at("dim").get<int>();
    s.points = js.at("points").get<std::vector<std::vector<double>>>();
    sets.push_back(std::move(s));
  }

  Codebook cb = build_codebook(build_design(relays), partition, std::move(sets));

  const json& jentries = in.at("entries");
  if (jentries.size() != cb.size())
    throw std::invalid_argument("codebook JSON: entry count does not match the rebuilt codebook");
  const auto entries = cb.entries();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto x = jentries[k].at("x").get<std::vector<double>>();
    const double scale = jentries[k].at("scale").get<double>();
    if (x.size() != entries[k].symbols.size())
      throw std::invalid_argument("codebook JSON: symbol vector length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::abs(x[i] - entries[k].symbols[i]) > 1e-12)
        throw std::invalid_argument("codebook JSON: stored symbols disagree with the rebuilt codebook");
    if (std::abs(scale - entries[k].scale) > 1e-12)
      throw std::invalid_argument("codebook JSON: stored scale disagrees with the rebuilt codebook");
  }
  return cb;
}

std::string min_distance_to_json(const Codebook& cb, const MinDistanceResult& r, int indent) {
  json out;
  out["relays"] = cb.design().relay_count();
  out["codebook_size"] = cb.size();
  out["bits_per_codeword"] = cb.bits_per_codeword();
  out["min_distance"] = r.value;
  out["witness"] = json::array({r.first, r.second});
  return dump(out, indent);
}

}  // namespace ddstc
