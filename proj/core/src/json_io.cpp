#include "latticebm/json_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "latticebm/errors.hpp"

namespace latticebm {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string rat(const Rational& r) { return r.get_str(); }

ordered_json set_to_node(const SetExpr& s) {
  ordered_json node;
  node["dim"] = s.dim;
  node["boxes"] = ordered_json::array();
  for (const Box& b : s.boxes) {
    ordered_json box = ordered_json::array();
    for (const Interval1D& iv : b.factors) {
      ordered_json factor;
      factor["lo"] = rat(iv.lo);
      factor["hi"] = rat(iv.hi);
      factor["lo_open"] = iv.lo_open;
      factor["hi_open"] = iv.hi_open;
      box.push_back(std::move(factor));
    }
    node["boxes"].push_back(std::move(box));
  }
  node["points"] = ordered_json::array();
  for (const RatVec& p : s.points) {
    ordered_json pt = ordered_json::array();
    for (const Rational& c : p) pt.push_back(rat(c));
    node["points"].push_back(std::move(pt));
  }
  return node;
}

const ordered_json& field(const ordered_json& node, const char* key) {
  auto it = node.find(key);
  if (it == node.end()) throw input_error(std::string("missing field: ") + key);
  return *it;
}

Rational rat_field(const ordered_json& node) {
  if (!node.is_string()) throw input_error("rationals must be JSON strings");
  return parse_rational(node.get<std::string>());
}

RatVec point_from_node(const ordered_json& node) {
  if (!node.is_array()) throw input_error("a point must be an array of rational strings");
  RatVec p;
  for (const auto& c : node) p.push_back(rat_field(c));
  return p;
}

SetExpr set_from_node(const ordered_json& node) {
  if (!node.is_object()) throw input_error("a set must be a JSON object");
  int dim = field(node, "dim").get<int>();
  std::vector<Box> boxes;
  if (auto it = node.find("boxes"); it != node.end()) {
    for (const auto& bnode : *it) {
      std::vector<Interval1D> factors;
      for (const auto& fnode : bnode) {
        bool lo_open = fnode.value("lo_open", false);
        bool hi_open = fnode.value("hi_open", false);
        factors.emplace_back(rat_field(field(fnode, "lo")), rat_field(field(fnode, "hi")),
                             lo_open, hi_open);
      }
      boxes.emplace_back(std::move(factors));
    }
  }
  std::vector<RatVec> points;
  if (auto it = node.find("points"); it != node.end())
    for (const auto& pnode : *it) points.push_back(point_from_node(pnode));
  return SetExpr(dim, std::move(boxes), std::move(points));
}

ordered_json radical_to_node(const RadicalSum& s) {
  ordered_json node;
  node["degree"] = s.degree();
  node["terms"] = ordered_json::array();
  for (const RadicalSum::Term& t : s.terms())
    node["terms"].push_back(ordered_json::array({rat(t.coeff), t.radicand.get_str()}));
  return node;
}

ordered_json certificate_to_node(const Certificate& cert) {
  ordered_json node;
  node["theorem"] = cert.theorem_id;
  node["verdict"] = verdict_name(cert.verdict);
  node["lhs"] = radical_to_node(cert.lhs);
  node["rhs"] = radical_to_node(cert.rhs);
  if (cert.witness) {
    ordered_json w;
    w["note"] = cert.witness->note;
    if (cert.witness->x) {
      ordered_json pt = ordered_json::array();
      for (const Rational& c : *cert.witness->x) pt.push_back(rat(c));
      w["x"] = std::move(pt);
    }
    if (cert.witness->y) {
      ordered_json pt = ordered_json::array();
      for (const Rational& c : *cert.witness->y) pt.push_back(rat(c));
      w["y"] = std::move(pt);
    }
    node["witness"] = std::move(w);
  }
  return node;
}

ordered_json instance_to_node(const ScanInstance& inst) {
  ordered_json node;
  node["K"] = set_to_node(inst.K);
  node["L"] = set_to_node(inst.L);
  node["lambda"] = rat(inst.lambda);
  node["certificate"] = certificate_to_node(inst.certificate);
  return node;
}

ordered_json parse_text(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception&) {
    throw input_error("malformed JSON input");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open the file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string to_json(const SetExpr& s) { return set_to_node(s).dump(2); }

std::string to_json(const PointMassFunction& f) {
  ordered_json node;
  node["dim"] = f.dim();
  node["atoms"] = ordered_json::array();
  for (const auto& [x, v] : f.support()) {
    ordered_json atom;
    ordered_json pt = ordered_json::array();
    for (const Rational& c : x) pt.push_back(rat(c));
    atom["x"] = std::move(pt);
    atom["value"] = rat(v);
    node["atoms"].push_back(std::move(atom));
  }
  if (f.char_part()) node["char"] = set_to_node(*f.char_part());
  return node.dump(2);
}

std::string to_json(const LatticeBasis& basis) {
  ordered_json node;
  node["rows"] = ordered_json::array();
  for (const RatVec& row : basis.rows()) {
    ordered_json r = ordered_json::array();
    for (const Rational& c : row) r.push_back(rat(c));
    node["rows"].push_back(std::move(r));
  }
  return node.dump(2);
}

std::string to_json(const Certificate& cert) { return certificate_to_node(cert).dump(2); }

std::string to_json(const ScanReport& report) {
  ordered_json node;
  node["theorem"] = report.theorem_id;
  node["instances_run"] = report.instances_run;
  node["skipped_preconditions"] = report.skipped_preconditions;
  if (report.min_slack) node["min_slack"] = instance_to_node(*report.min_slack);
  node["equalities"] = ordered_json::array();
  for (const ScanInstance& e : report.equalities) node["equalities"].push_back(instance_to_node(e));
  node["violations"] = ordered_json::array();
  for (const ScanInstance& v : report.violations) node["violations"].push_back(instance_to_node(v));
  return node.dump(2);
}

std::string to_json(const std::vector<ReproCheck>& checks) {
  ordered_json node;
  node["checks"] = ordered_json::array();
  for (const ReproCheck& c : checks) {
    ordered_json row;
    row["name"] = c.name;
    row["pass"] = c.pass;
    row["detail"] = c.detail;
    node["checks"].push_back(std::move(row));
  }
  return node.dump(2);
}

std::string to_json(const std::vector<RiemannStep>& steps) {
  ordered_json node;
  node["steps"] = ordered_json::array();
  for (const RiemannStep& s : steps) {
    ordered_json row;
    row["k"] = s.k;
    row["lower_sum"] = rat(s.lower_sum);
    node["steps"].push_back(std::move(row));
  }
  return node.dump(2);
}

SetExpr set_from_json(const std::string& text) {
  try {
    return set_from_node(parse_text(text));
  } catch (const nlohmann::json::exception&) {
    throw input_error("malformed set value");
  }
}

PointMassFunction function_from_json(const std::string& text) {
  try {
    ordered_json node = parse_text(text);
    if (!node.is_object()) throw input_error("a function must be a JSON object");
    int dim = field(node, "dim").get<int>();
    std::map<RatVec, Rational, RatVecLess> support;
    if (auto it = node.find("atoms"); it != node.end())
      for (const auto& atom : *it)
        support.emplace(point_from_node(field(atom, "x")), rat_field(field(atom, "value")));
    std::optional<SetExpr> char_part;
    if (auto it = node.find("char"); it != node.end()) char_part = set_from_node(*it);
    return PointMassFunction(dim, std::move(support), std::move(char_part));
  } catch (const nlohmann::json::exception&) {
    throw input_error("malformed function value");
  }
}

LatticeBasis basis_from_json(const std::string& text) {
  try {
    ordered_json node = parse_text(text);
    if (!node.is_object()) throw input_error("a basis must be a JSON object");
    std::vector<RatVec> rows;
    for (const auto& rnode : field(node, "rows")) rows.push_back(point_from_node(rnode));
    return LatticeBasis(std::move(rows));
  } catch (const nlohmann::json::exception&) {
    throw input_error("malformed basis value");
  }
}

SetExpr load_set(const std::string& path) {
  try {
    return set_from_json(read_file(path));
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

PointMassFunction load_function(const std::string& path) {
  try {
    return function_from_json(read_file(path));
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

LatticeBasis load_basis(const std::string& path) {
  try {
    return basis_from_json(read_file(path));
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

}  // namespace latticebm
