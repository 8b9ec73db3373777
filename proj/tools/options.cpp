#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "runner.hpp"

namespace hclab::cli {

namespace {

Option opt(std::string name, Kind kind, json fallback, std::string help) {
  return {std::move(name), kind, std::move(fallback), std::move(help)};
}

std::vector<Option> operator_options(const std::string& family, long dim) {
  return {opt("family", Kind::Text, family, "operator family: shift, unipotent, rotation, zero, integral"),
          opt("dim", Kind::Int, dim, "dimension of the family member (grid size for integral)"),
          opt("matrix", Kind::Json, nullptr, "explicit matrix (array of rows); overrides the family")};
}

std::vector<Option> weight_options(const std::string& family, double c, long m0, long window) {
  return {opt("weights", Kind::Text, family, "weight family: genshi-hc, genshi-sc, constant, symmetric"),
          opt("c", Kind::Real, c, "family parameter c (base for symmetric)"),
          opt("m0", Kind::Int, m0, "family parameter m0"),
          opt("window", Kind::Int, window, "explicit window size N (0 picks the family default)"),
          opt("weights-file", Kind::Text, "", "JSON weight sequence; overrides the family")};
}

template <class... Vs>
std::vector<Option> join(Vs... vs) {
  std::vector<Option> out;
  (out.insert(out.end(), vs.begin(), vs.end()), ...);
  return out;
}

std::vector<Command> build_commands() {
  std::vector<Command> cs;
  cs.push_back({"detan", "det M_{n,k} by recurrence and directly",
                {opt("max-n", Kind::Int, 8, "largest n"), opt("max-k", Kind::Int, 8, "largest k")}});
  cs.push_back({"jordan", "Jordan solver residual tables on K^{2n}",
                {opt("n", Kind::Int, 3, "half dimension"), opt("z", Kind::List, json::array({2}), "z as re or re,im"),
                 opt("trials", Kind::Int, 10, "seeded (u, v) pairs"), opt("seed", Kind::Int, 1, "seed"),
                 opt("j", Kind::Int, 0, "also build discrete pairs at this j when positive")}});
  cs.push_back({"tensor", "approach vectors for commuting tensor shifts",
                {opt("blocks", Kind::List, json::array({1, 1}), "half dimensions n_1..n_k"),
                 opt("exponents", Kind::List, json::array({1, 1}), "z_m = ((m+1)^p_1, ..., (m+1)^p_k)"),
                 opt("m", Kind::Int, 64, "sequence index"),
                 opt("u", Kind::Json, nullptr, "flat vector in E (default first basis vector of E)"),
                 opt("v", Kind::Json, nullptr, "flat vector in E (default first basis vector of E)")}});
  cs.push_back({"kerim", "unimodular Jordan-chain pairs (u_k, v_k) for T = z(I + A)",
                join(operator_options("shift", 4),
                     std::vector<Option>{opt("z", Kind::List, json::array({1}), "unimodular z as re or re,im"),
                                         opt("x", Kind::Json, nullptr, "target vector (default e_1)"),
                                         opt("k", Kind::Int, 64, "power k")})});
  cs.push_back({"salas", "Salas weight-product criteria for bilateral shifts",
                join(weight_options("genshi-hc", 2.0, 3, 0),
                     std::vector<Option>{opt("kind", Kind::Text, "hypercyclic", "hypercyclic or supercyclic"),
                                         opt("m-max", Kind::Int, 8, "largest m"),
                                         opt("n-max", Kind::Int, 16384, "largest n"),
                                         opt("tol", Kind::Real, 1e-6, "trace threshold")})});
  cs.push_back({"subspaces", "ker-dagger, Lambda(T) and EBS tuple spans",
                join(std::vector<Option>{opt("mode", Kind::Text, "ker-dagger", "ker-dagger, lambda or ebs")},
                     operator_options("shift", 4),
                     std::vector<Option>{opt("blocks", Kind::List, json::array({1, 1}), "tensor blocks for ebs"),
                                         opt("tol", Kind::Real, 1e-9, "rank tolerance")})});
  cs.push_back({"perturb", "nilpotent finite-rank perturbation with prescribed chains",
                {opt("dim", Kind::Int, 10, "dimension"), opt("n", Kind::Int, 2, "nilpotency index of T_xi"),
                 opt("seed", Kind::Int, 1, "seed"), opt("s", Kind::Text, "1", "rational s as p/q")}});
  cs.push_back({"regions", "Godefroy-Shapiro region verdicts",
                {opt("builtin", Kind::Text, "U", "region: U, V or disk"),
                 opt("center", Kind::List, json::array({0}), "disk center as re or re,im"),
                 opt("radius", Kind::Real, 1.0, "disk radius"),
                 opt("transform", Kind::Text, "shift1", "shift1, exp or identity"),
                 opt("samples", Kind::Int, 100000, "sample count (at least 10^4)"),
                 opt("seed", Kind::Int, 1, "seed")}});
  cs.push_back({"symmetry", "symmetry obstructions to cyclicity of direct sums",
                join(std::vector<Option>{opt("mode", Kind::Text, "weights", "weights or bilinear")},
                     weight_options("symmetric", 2.0, 0, 0),
                     std::vector<Option>{opt("p", Kind::List, json::array({1, 1}), "polynomial coefficients, lowest first"),
                                         opt("target", Kind::Text, "shift", "bilinear mode: shift, diagonal or random"),
                                         opt("trials", Kind::Int, 100, "random trials"), opt("N", Kind::Int, 50, "orbit length"),
                                         opt("seed", Kind::Int, 1, "seed")})});
  cs.push_back({"grading", "degree grading over Q(z)",
                {opt("mode", Kind::Text, "n0", "n0, independent or member"),
                 opt("vectors", Kind::Json, json::array({json::array({json::array({1})}), json::array({json::array({0, 1})}),
                                                         json::array({json::array({0, 0, 1})})}),
                     "graded vectors; a component is a coefficient list or {num, den}"),
                 opt("x", Kind::Json, json::array({json::array({1}), json::array({0, 1})}), "member mode: x"),
                 opt("y", Kind::Json, json::array({json::array({0, 1}), json::array({0, 0, 1})}), "member mode: y")}});
  cs.push_back({"mixing", "hit windows of T^n(U) against V",
                join(operator_options("unipotent", 4),
                     std::vector<Option>{opt("u", Kind::Json, nullptr, "center of U (default e_1)"),
                                         opt("v", Kind::Json, nullptr, "center of V (default e_2)"),
                                         opt("radius-u", Kind::Real, 0.5, "radius of U"),
                                         opt("radius-v", Kind::Real, 0.5, "radius of V"),
                                         opt("horizon", Kind::Int, 64, "largest n"),
                                         opt("probes", Kind::Int, 16, "random probes per n"),
                                         opt("k", Kind::Int, 0, "also report the transitivity pair at this k"),
                                         opt("seed", Kind::Int, 1, "seed")})});
  cs.push_back({"density", "epsilon-net coverage of orbit pairs",
                join(std::vector<Option>{opt("mode", Kind::Text, "u3", "u3 or supercyclic"),
                                         opt("scaling", Kind::Text, "projective", "u3 mode: projective or none")},
                     weight_options("genshi-sc", 2.0, 3, 16), operator_options("integral", 32),
                     std::vector<Option>{opt("coord", Kind::Int, 0, "projection coordinate"),
                                         opt("radius", Kind::Real, 1.0, "net radius"),
                                         opt("cells", Kind::Int, 8, "cells per axis"),
                                         opt("samples", Kind::Int, 256, "base vectors"),
                                         opt("horizon", Kind::Int, 64, "largest power"),
                                         opt("seed", Kind::Int, 1, "seed")})});
  cs.push_back({"volterra", "distance of f to the hyperplanes h^(n) orthogonal",
                {opt("ngrid", Kind::Int, 2048, "grid cells"), opt("q", Kind::Real, 0.5, "support cutoff"),
                 opt("n-max", Kind::Int, 40, "largest derivative order"),
                 opt("f", Kind::Text, "bump", "bump or zero"),
                 opt("rule", Kind::Text, "gregory", "gregory or trapezoid")}});
  cs.push_back({"saan-group", "exponential group of the weighted lowering generators",
                {opt("k", Kind::Int, 2, "number of generators"), opt("degree", Kind::Int, 8, "box |m| <= degree"),
                 opt("trials", Kind::Int, 20, "random (z, w) pairs"), opt("scale", Kind::Real, 1.0, "coordinate box"),
                 opt("seed", Kind::Int, 1, "seed")}});
  return cs;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool has_type(const Option& o, const json& v) {
  switch (o.kind) {
    case Kind::Int:
      return v.is_number_integer();
    case Kind::Real:
      return v.is_number();
    case Kind::Text:
      return v.is_string();
    case Kind::List:
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); });
    case Kind::Json:
      return true;
  }
  return false;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> cs = build_commands();
  return cs;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw InputError("unknown subcommand '" + name + "'");
}

json resolve(const Command& cmd, const json& given) {
  if (!given.is_null() && !given.is_object()) throw InputError("params must be a JSON object");
  json out = json::object();
  for (const auto& o : cmd.options) out[o.name] = o.fallback;
  if (given.is_null()) return out;
  for (const auto& [key, value] : given.items()) {
    const auto it = std::find_if(cmd.options.begin(), cmd.options.end(), [&](const Option& o) { return o.name == key; });
    if (it == cmd.options.end()) throw InputError(cmd.name + ": unknown parameter '" + key + "'");
    json v = value;
    if (it->kind == Kind::List && v.is_number()) v = json::array({v});
    if (it->kind == Kind::List && v.is_string()) v = parse_flag(*it, v.get<std::string>());
    if (!has_type(*it, v)) throw InputError(cmd.name + ": parameter '" + key + "' has the wrong type");
    out[key] = v;
  }
  return out;
}

json parse_flag(const Option& o, const std::string& text) {
  try {
    switch (o.kind) {
      case Kind::Int: {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) break;
        return v;
      }
      case Kind::Real: {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) break;
        return v;
      }
      case Kind::Text:
        return text;
      case Kind::List: {
        json out = json::array();
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          std::size_t used = 0;
          const double v = std::stod(item, &used);
          if (used != item.size()) throw InputError("");
          if (v == static_cast<double>(static_cast<long>(v)) && item.find_first_of(".eE") == std::string::npos) {
            out.push_back(static_cast<long>(v));
          } else {
            out.push_back(v);
          }
        }
        if (out.empty()) break;
        return out;
      }
      case Kind::Json:
        return json::parse(!text.empty() && text[0] == '@' ? read_text(text.substr(1)) : text);
    }
  } catch (const std::exception&) {
  }
  throw InputError("--" + o.name + ": cannot parse '" + text + "'");
}

}  // namespace hclab::cli
