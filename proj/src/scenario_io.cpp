// Copyright 2026 The nullweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nullweak/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "nullweak/gates.hpp"
#include "nullweak/setups.hpp"

namespace nullweak::cli {

using hilbert::BasisPtr;
using hilbert::Complex;
using hilbert::Ket;
using hilbert::LinOp;
using hilbert::Matrix;
using hilbert::StageMap;
using json = nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.contains(key)) bad_field(field.empty() ? key : field + "." + key, "missing");
  return obj.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) bad_field(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad_field(field, "not finite");
  return d;
}

std::string string_of(const json& v, const std::string& field) {
  if (!v.is_string()) bad_field(field, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> strings(const json& v, const std::string& field) {
  if (!v.is_array()) bad_field(field, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string_of(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Complex complex_of(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) bad_field(field, "expected a [re, im] pair");
  return {number(v[0], field + "[0]"), number(v[1], field + "[1]")};
}

Matrix matrix_of(const json& v, std::size_t dim, const std::string& field) {
  if (!v.is_array() || v.size() != dim) bad_field(field, "expected " + std::to_string(dim) + " rows");
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != dim) bad_field(rf, "expected " + std::to_string(dim) + " entries");
    for (std::size_t j = 0; j < dim; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          complex_of(v[i][j], rf + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

std::vector<int> spins_of(const json& v, const std::string& field) {
  if (v.is_null()) return {};
  if (!v.is_array()) bad_field(field, "expected an array of spin labels or null");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) bad_field(field + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

hilbert::BasisLabel label_of(const std::string& key, const hilbert::Basis& basis, const std::string& field) {
  const auto colon = key.rfind(':');
  if (!basis.has_spin()) return {key, std::nullopt};
  if (colon == std::string::npos) bad_field(field, "label '" + key + "' needs a spin suffix like 'D:+1'");
  try {
    return {key.substr(0, colon), std::stoi(key.substr(colon + 1))};
  } catch (const std::exception&) {
    bad_field(field, "bad spin suffix in label '" + key + "'");
  }
}

Ket ket_of(const json& v, const BasisPtr& basis, const std::string& field) {
  hilbert::Vector amps = hilbert::Vector::Zero(static_cast<Eigen::Index>(basis->dim()));
  if (v.is_array()) {
    if (v.size() != basis->dim()) {
      bad_field(field, "expected " + std::to_string(basis->dim()) + " amplitudes");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      amps(static_cast<Eigen::Index>(i)) = complex_of(v[i], field + "[" + std::to_string(i) + "]");
    }
  } else if (v.is_object()) {
    for (const auto& [key, val] : v.items()) {
      const std::string f = field + "." + key;
      const auto idx = basis->find(label_of(key, *basis, f));
      if (!idx) throw ValidationError("field '" + f + "': label not in slice basis");
      amps(static_cast<Eigen::Index>(*idx)) = complex_of(val, f);
    }
  } else {
    bad_field(field, "expected an amplitude array or a label map");
  }
  Ket k(basis, std::move(amps));
  if (k.norm() == 0.0) throw ValidationError("field '" + field + "': ket has zero norm");
  return k;
}

std::map<std::string, std::string> renames_of(const json& stage, const std::string& field) {
  std::map<std::string, std::string> out;
  if (!stage.contains("rename")) return out;
  const json& r = stage.at("rename");
  if (!r.is_object()) bad_field(field + ".rename", "expected an object");
  for (const auto& [k, v] : r.items()) out[k] = string_of(v, field + ".rename." + k);
  return out;
}

std::vector<std::vector<int>> spin_sets(const json& v, const std::string& field) {
  if (!v.is_array()) bad_field(field, "expected an array");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (v[i].is_number_integer()) {
      out.push_back({v[i].get<int>()});
    } else {
      out.push_back(spins_of(v[i], f));
    }
  }
  return out;
}

double gate_parameter(const std::string& gate, const std::string& prefix, const std::string& field) {
  try {
    std::size_t used = 0;
    const std::string rest = gate.substr(prefix.size());
    const double v = std::stod(rest, &used);
    if (used != rest.size() || !std::isfinite(v)) throw std::invalid_argument(rest);
    return v;
  } catch (const std::exception&) {
    bad_field(field + ".gate", "bad parameter in '" + gate + "'");
  }
}

StageMap gate_stage(const json& stage, const BasisPtr& in, const std::string& field) {
  const std::string gate = string_of(require(stage, "gate", field), field + ".gate");
  auto paths = [&] { return strings(require(stage, "paths", field), field + ".paths"); };
  auto outs = [&](const std::vector<std::string>& dflt) {
    return stage.contains("out") ? strings(stage.at("out"), field + ".out") : dflt;
  };
  auto bs = [&](double r) {
    const auto p = paths();
    if (p.size() != 2) bad_field(field + ".paths", "beamsplitter needs two rails");
    const auto o = outs(p);
    if (o.size() != 2) bad_field(field + ".out", "beamsplitter needs two output labels");
    return setups::beamsplitter(in, p[0], p[1], o[0], o[1], r);
  };

  std::optional<StageMap> m;
  if (gate == "bs50") {
    m = bs(0.5);
  } else if (gate.rfind("bs:", 0) == 0) {
    m = bs(gate_parameter(gate, "bs:", field));
  } else if (gate.rfind("phase:", 0) == 0) {
    m = setups::phase_shift(in, paths(), gate_parameter(gate, "phase:", field));
  } else if (gate.rfind("wigner_d1:", 0) == 0) {
    m = setups::spin_rotation(in, gate_parameter(gate, "wigner_d1:", field));
  } else if (gate == "merge" || gate == "split") {
    const auto p = paths();
    const auto s = spin_sets(require(stage, "spins", field), field + ".spins");
    const auto o = outs(p);
    m = gate == "merge" ? setups::merge(in, p, s, o) : setups::split(in, p, s, o);
  } else if (gate == "identity") {
    m = StageMap(in, in, Matrix::Identity(static_cast<Eigen::Index>(in->dim()), static_cast<Eigen::Index>(in->dim())));
  } else {
    bad_field(field + ".gate", "unknown gate '" + gate + "'");
  }
  const auto renames = renames_of(stage, field);
  if (!renames.empty()) m = m->then(setups::relabel(m->to(), renames));
  return *m;
}

LinOp observable_of(const json& probe, const BasisPtr& basis, const std::string& field) {
  std::optional<LinOp> op;
  if (probe.contains("region")) {
    const std::string region = string_of(probe.at("region"), field + ".region");
    const double gamma = probe.contains("gamma") ? number(probe.at("gamma"), field + ".gamma") : 1.0;
    if (!basis->path_index(region)) throw ValidationError("field '" + field + ".region': path not in slice basis");
    op = LinOp::path_projector(basis, region, gamma);
  } else if (probe.contains("observable")) {
    const json& o = probe.at("observable");
    if (o.is_string()) {
      const std::string name = o.get<std::string>();
      if (name == "identity") {
        op = LinOp::identity(basis);
      } else if (name == "jx" || name == "jy" || name == "jz") {
        const Matrix j = name == "jx" ? hilbert::spin1_jx() : name == "jy" ? hilbert::spin1_jy() : hilbert::spin1_jz();
        if (basis->spins() != std::vector<int>{1, 0, -1}) {
          throw ValidationError("field '" + field + ".observable': spin observable needs spins [1, 0, -1]");
        }
        op = LinOp::spin_operator(basis, j);
      } else {
        bad_field(field + ".observable", "unknown observable '" + name + "'");
      }
    } else {
      op = LinOp(basis, matrix_of(o, basis->dim(), field + ".observable"));
    }
  } else {
    bad_field(field, "probe needs 'region' or 'observable'");
  }
  if (probe.contains("localize")) {
    const std::string region = string_of(probe.at("localize"), field + ".localize");
    if (!basis->path_index(region)) throw ValidationError("field '" + field + ".localize': path not in slice basis");
    op = protocol::localized_observable(LinOp::path_projector(basis, region), *op);
  }
  return *op;
}

std::size_t slice_of(const json& v, const hilbert::StageSequence& seq, const std::string& field) {
  if (v.is_number_integer()) {
    const auto i = v.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= seq.slice_count()) {
      throw ValidationError("field '" + field + "': slice index out of range");
    }
    return static_cast<std::size_t>(i);
  }
  const std::string name = string_of(v, field);
  auto i = seq.slice_index(name);
  if (!i) throw ValidationError("field '" + field + "': no slice named '" + name + "'");
  return *i;
}

protocol::Scenario builtin_of(const json& doc) {
  const std::string name = string_of(doc.at("builtin"), "builtin");
  const pointer::GaussianBase ptr(doc.contains("sigma") ? number(doc.at("sigma"), "sigma") : 1.0);
  const double g = doc.contains("g") ? number(doc.at("g"), "g") : 0.01;
  if (name == "three-path") {
    setups::AnglePair angles{0.0, 0.0};
    if (doc.contains("alpha")) {
      angles.alpha = number(doc.at("alpha"), "alpha");
      angles.phi = doc.contains("phi") ? number(doc.at("phi"), "phi") : setups::solve_postselection(angles.alpha);
    } else {
      angles = setups::solve_unit_weak_values();
    }
    std::map<std::string, double> gamma;
    if (doc.contains("gamma")) {
      if (!doc.at("gamma").is_object()) bad_field("gamma", "expected an object of region factors");
      for (const auto& [k, v] : doc.at("gamma").items()) gamma[k] = number(v, "gamma." + k);
    }
    return setups::build_three_path(angles.alpha, angles.phi, gamma, ptr, g).scenario;
  }
  if (name == "nested-mzi") return setups::build_nested_mzi(ptr, g).scenario;
  throw ValidationError("field 'builtin': unknown builtin '" + name + "'");
}

protocol::Scenario described(const json& doc) {
  std::vector<StageMap> stages;
  std::vector<std::string> names;
  BasisPtr first;
  const json& stage_list = require(doc, "stages", "");
  if (!stage_list.is_array()) bad_field("stages", "expected an array");

  if (doc.contains("slices")) {
    const json& slices = doc.at("slices");
    if (!slices.is_array() || slices.empty()) bad_field("slices", "expected a non-empty array");
    const auto spins = doc.contains("spins") ? spins_of(doc.at("spins"), "spins") : std::vector<int>{};
    std::vector<BasisPtr> bases;
    for (std::size_t i = 0; i < slices.size(); ++i) {
      const std::string f = "slices[" + std::to_string(i) + "]";
      names.push_back(slices[i].contains("name") ? string_of(slices[i].at("name"), f + ".name") : "s" + std::to_string(i));
      bases.push_back(hilbert::make_basis(strings(require(slices[i], "paths", f), f + ".paths"), spins));
    }
    if (stage_list.size() + 1 != bases.size()) {
      throw ValidationError("field 'stages': need exactly one stage between consecutive slices");
    }
    for (std::size_t i = 0; i < stage_list.size(); ++i) {
      const std::string f = "stages[" + std::to_string(i) + "]";
      const Matrix m = matrix_of(require(stage_list[i], "matrix", f), bases[i]->dim(), f + ".matrix");
      stages.emplace_back(bases[i], bases[i + 1], m);
    }
    first = bases.front();
  } else {
    const json& b = require(doc, "basis", "");
    first = hilbert::make_basis(strings(require(b, "paths", "basis"), "basis.paths"),
                                b.contains("spins") ? spins_of(b.at("spins"), "basis.spins") : std::vector<int>{});
    BasisPtr cur = first;
    for (std::size_t i = 0; i < stage_list.size(); ++i) {
      const std::string f = "stages[" + std::to_string(i) + "]";
      const json& st = stage_list[i];
      if (!st.is_object()) bad_field(f, "expected an object");
      if (st.contains("matrix")) {
        stages.push_back(setups::matrix_stage(cur, matrix_of(st.at("matrix"), cur->dim(), f + ".matrix"),
                                              renames_of(st, f)));
      } else {
        stages.push_back(gate_stage(st, cur, f));
      }
      cur = stages.back().to();
    }
    if (doc.contains("slice_names")) names = strings(doc.at("slice_names"), "slice_names");
    if (!names.empty() && names.size() != stages.size() + 1) {
      throw ValidationError("field 'slice_names': need one name per slice");
    }
  }

  hilbert::StageSequence seq = stages.empty() ? hilbert::StageSequence(first, names.empty() ? "s0" : names.front())
                                              : hilbert::StageSequence(stages, names);
  Ket pre = ket_of(require(doc, "preselect", ""), seq.slice_basis(0), "preselect");
  Ket post = ket_of(require(doc, "postselect", ""), seq.slice_basis(seq.slice_count() - 1), "postselect");

  std::vector<protocol::Probe> probes;
  if (doc.contains("probes")) {
    const json& list = doc.at("probes");
    if (!list.is_array()) bad_field("probes", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string f = "probes[" + std::to_string(i) + "]";
      const json& p = list[i];
      if (!p.is_object()) bad_field(f, "expected an object");
      const std::size_t slice = slice_of(require(p, "slice", f), seq, f + ".slice");
      const std::string label = p.contains("label") ? string_of(p.at("label"), f + ".label") : "probe" + std::to_string(i);
      const double sigma = p.contains("sigma") ? number(p.at("sigma"), f + ".sigma") : 1.0;
      const double g = p.contains("g") ? number(p.at("g"), f + ".g") : 0.01;
      probes.push_back({label, slice, observable_of(p, seq.slice_basis(slice), f), pointer::GaussianBase(sigma), g});
    }
  }
  return protocol::Scenario(doc.contains("name") ? string_of(doc.at("name"), "name") : "scenario", std::move(seq),
                            std::move(pre), std::move(post), std::move(probes));
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json ket_json(const Ket& k) {
  json a = json::array();
  for (Eigen::Index i = 0; i < k.amplitudes().size(); ++i) a.push_back(complex_json(k.amplitudes()(i)));
  return a;
}

}  // namespace

protocol::Scenario parse_scenario(std::string_view text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset -> line number for the diagnostic.
    std::size_t line = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i < upto; ++i) line += text[i] == '\n' ? 1 : 0;
    throw ParseError(std::string(origin) + ":" + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(std::string(origin) + ": top level must be an object");
  try {
    return doc.contains("builtin") ? builtin_of(doc) : described(doc);
  } catch (const ParseError& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(origin) + ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  } catch (const Error& e) {
    // Invariant violations raised while assembling the scenario.
    throw ValidationError(std::string(origin) + ": " + e.what());
  }
}

protocol::Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string emit_scenario(const protocol::Scenario& s) {
  json doc;
  doc["name"] = s.name;
  const auto& seq = s.stages;
  const auto& b0 = *seq.slice_basis(0);
  doc["spins"] = b0.has_spin() ? json(b0.spins()) : json(nullptr);
  json slices = json::array();
  for (std::size_t i = 0; i < seq.slice_count(); ++i) {
    slices.push_back({{"name", seq.slice_name(i)}, {"paths", seq.slice_basis(i)->paths()}});
  }
  doc["slices"] = std::move(slices);
  json stages = json::array();
  for (const auto& st : seq.stages()) stages.push_back({{"matrix", matrix_json(st.matrix())}});
  doc["stages"] = std::move(stages);
  doc["preselect"] = ket_json(s.preselect);
  doc["postselect"] = ket_json(s.postselect);
  json probes = json::array();
  for (const auto& p : s.probes) {
    probes.push_back({{"label", p.label},
                      {"slice", p.slice},
                      {"observable", matrix_json(p.observable.matrix())},
                      {"sigma", p.pointer.sigma()},
                      {"g", p.g}});
  }
  doc["probes"] = std::move(probes);
  return doc.dump(1) + "\n";
}

std::vector<ResultRow> run(const protocol::Scenario& scenario, const RunFlags& flags) {
  protocol::SweepRequest req;
  req.analytic = flags.analytic;
  req.mode = flags.mode.value_or(protocol::Mode::exact);
  if (flags.sweep) {
    req.g_values = protocol::log_spaced(flags.sweep->g_min, flags.sweep->g_max, flags.sweep->n);
  } else if (flags.g) {
    req.g_values = {*flags.g};
  }
  const auto points = flags.parallel ? protocol::sweep(scenario, req) : protocol::sweep_serial(scenario, req);

  std::vector<ResultRow> rows;
  rows.reserve(points.size());
  for (const auto& pt : points) {
    const auto& probe = scenario.probes[pt.probe_index];
    ResultRow row;
    row.probe = probe.label;
    if (flags.sweep) row.probe += "@g=" + format_number(pt.g);
    row.slice = scenario.stages.slice_name(probe.slice);
    row.g = pt.g;
    if (pt.report) {
      row.weak_value = pt.report->weak_value;
      row.shift = pt.report->pointer_shift;
      row.prob = pt.report->postselect_prob;
      row.fidelity = pt.report->fidelity;
      row.regime = protocol::to_string(pt.report->regime);
    } else {
      row.regime = "error";
      row.error = pt.error;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "undefined";
  if (*v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", *v);
  return buf;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = "probe,slice,wv_re,wv_im,shift,prob,regime\n";
  for (const auto& r : rows) {
    const auto re = r.weak_value ? std::optional<double>(r.weak_value->real()) : std::nullopt;
    const auto im = r.weak_value ? std::optional<double>(r.weak_value->imag()) : std::nullopt;
    out += r.probe + ',' + r.slice + ',' + format_number(re) + ',' + format_number(im) + ',' +
           format_number(r.shift) + ',' + format_number(r.prob) + ',' + r.regime + '\n';
  }
  return out;
}

std::string format_json(const std::vector<ResultRow>& rows) {
  auto num = [](std::optional<double> v) { return v && std::isfinite(*v) ? json(*v) : json(nullptr); };
  json list = json::array();
  for (const auto& r : rows) {
    json row = {{"probe", r.probe},
                {"slice", r.slice},
                {"g", r.g},
                {"wv_re", num(r.weak_value ? std::optional<double>(r.weak_value->real()) : std::nullopt)},
                {"wv_im", num(r.weak_value ? std::optional<double>(r.weak_value->imag()) : std::nullopt)},
                {"shift", num(r.shift)},
                {"prob", num(r.prob)},
                {"fidelity", num(r.fidelity)},
                {"regime", r.regime}};
    if (!r.error.empty()) row["error"] = r.error;
    list.push_back(std::move(row));
  }
  return json{{"rows", std::move(list)}}.dump(2) + "\n";
}

}  // namespace nullweak::cli
