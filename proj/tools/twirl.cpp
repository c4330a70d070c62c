// twirl: command-line front end for the exact twisted-unitary-group engine.
//
// Subcommands
//   table FILE                 compute a character table from group generators
//   app FILE                   report all (faithful f, lambda) pairs with
//                              ||lambda*f|| = 1, grouped into Galois orbits
//   minn FILE                  smallest n with <lambda, f^n> > 0
//   verify MATFILE [TABLEFILE] numerically certify the code cut out by an
//                              isotypic projector (Knill-Laflamme residuals)
//   family TAG B               Weil-family degree parameters (TAG = sp | su)
//   moment Q T                 exact Haar moment of |tr U|^(2t) over U(q)
//
// Inputs are detected by their first line: CTBL v1 (character table),
// PERMGROUP v1 (permutation generators), MATREP v1 (cyclotomic matrix
// generators).  Subcommands that need a table accept any of the three and
// compute what is missing; a matrix group is converted through its
// left-regular permutation action first.
//
// Characters are selected by signature, not row number: DEG[:KER[:IDX]]
// picks the IDX-th table row (1-based) of degree DEG and kernel size KER.
// Signatures are stable across systems; row numbers are not.
//
// Reports go to stdout (or -o FILE) as text, json, or csv.  At a fixed seed
// every report is byte-stable across runs and thread counts.  Exit code 0
// on success, 2 when a group exceeds an enumeration cap, 1 on any other
// error; in json mode errors are structured objects on stdout.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "twirl/chartab.hpp"
#include "twirl/ctbl_io.hpp"
#include "twirl/cyclotomic.hpp"
#include "twirl/errors.hpp"
#include "twirl/permgroup.hpp"
#include "twirl/rational.hpp"
#include "twirl/twist.hpp"
#include "twirl/verifier.hpp"

using json = nlohmann::ordered_json;
using namespace twirl;

namespace {

// ---------------------------------------------------------------------------
// Shared run configuration (global flags).

struct RunConfig {
  std::string format = "text";  // text | json | csv
  std::string output;           // empty = stdout
  int n_max = 24;
  int t_max = 6;
  double tol = -1.0;  // < 0: scale-aware default inside the verifier
  int threads = 1;
  std::uint64_t seed = 1;
  int cap = kElementCap;
  bool no_validate = false;
  bool include_trivial = false;
};

// ---------------------------------------------------------------------------
// Integer/json helpers.

json json_int(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

std::string str_int(const Integer& z) { return z.get_str(); }

Integer parse_positive_integer(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(std::string("expected a positive integer for ") + what + ", got \"" + s +
                     "\"");
  Integer z(s, 10);
  if (z <= 0) throw ParseError(std::string(what) + " must be positive");
  return z;
}

// q^n as an exact integer.
Integer int_pow(const Integer& q, int n) {
  Integer r = 1;
  for (int i = 0; i < n; ++i) r *= q;
  return r;
}

// ---------------------------------------------------------------------------
// Character signatures: DEG[:KER[:IDX]].

struct CharSig {
  Integer degree;
  std::optional<Integer> kernel;
  int index = 1;  // 1-based among matching rows, in table row order

  std::string to_string() const {
    std::string s = degree.get_str();
    if (kernel) s += ":" + kernel->get_str();
    if (index != 1) {
      if (!kernel) s += ":*";  // never produced by parse; display only
      s += ":" + std::to_string(index);
    }
    return s;
  }
};

CharSig parse_signature(const std::string& text) {
  CharSig sig;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.empty() || parts.size() > 3)
    throw ParseError("character signature must be DEG[:KER[:IDX]], got \"" + text + "\"");
  sig.degree = parse_positive_integer(parts[0], "signature degree");
  if (parts.size() >= 2) sig.kernel = parse_positive_integer(parts[1], "signature kernel size");
  if (parts.size() == 3) {
    Integer idx = parse_positive_integer(parts[2], "signature index");
    if (!idx.fits_sint_p()) throw ParseError("signature index out of range");
    sig.index = static_cast<int>(idx.get_si());
  }
  return sig;
}

// Kernel sizes of every row, computed once per table.
std::vector<Integer> kernel_sizes(const CharacterTable& t) {
  std::vector<Integer> ks;
  ks.reserve(t.num_characters());
  for (int i = 0; i < t.num_characters(); ++i) ks.push_back(kernel_classes(t, i).size);
  return ks;
}

// The canonical full signature DEG:KER:IDX of a row (IDX among rows sharing
// both degree and kernel size).
std::string row_signature(const CharacterTable& t, const std::vector<Integer>& ks, int row) {
  Integer deg = t.degree(row);
  int idx = 0;
  for (int i = 0; i <= row; ++i)
    if (t.degree(i) == deg && ks[i] == ks[row]) ++idx;
  return deg.get_str() + ":" + ks[row].get_str() + ":" + std::to_string(idx);
}

int resolve_signature(const CharacterTable& t, const std::vector<Integer>& ks,
                      const CharSig& sig, const char* role) {
  int seen = 0;
  for (int i = 0; i < t.num_characters(); ++i) {
    if (t.degree(i) != sig.degree) continue;
    if (sig.kernel && ks[i] != *sig.kernel) continue;
    if (++seen == sig.index) return i;
  }
  std::ostringstream msg;
  msg << "no " << role << " character matches signature " << sig.to_string() << " (" << seen
      << " row" << (seen == 1 ? "" : "s") << " of degree " << sig.degree.get_str();
  if (sig.kernel) msg << " with kernel size " << sig.kernel->get_str();
  msg << ")";
  throw ValidationError(msg.str());
}

// ---------------------------------------------------------------------------
// Input loading.  Any of the three formats can stand in for a table; matrix
// groups go through their left-regular permutation action.

std::size_t matrix_key_hash(const std::vector<Cyclotomic>& m) {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& e : m) h = h * 1099511628211ULL + e.hash();
  return h;
}

PermGroup regular_perm_group(const MatrixGroup& mg) {
  const int n = static_cast<int>(mg.elements.size());
  const int d = mg.dim;
  if (n > 65535) throw CapExceeded("regular action of " + mg.name + " needs " +
                                   std::to_string(n) + " points (cap 65535)");
  std::unordered_map<std::size_t, std::vector<int>> index;  // hash -> candidates
  for (int i = 0; i < n; ++i) index[matrix_key_hash(mg.elements[i])].push_back(i);
  auto find_elt = [&](const std::vector<Cyclotomic>& m) {
    auto it = index.find(matrix_key_hash(m));
    if (it != index.end())
      for (int i : it->second)
        if (mg.elements[i] == m) return i;
    throw ValidationError("matrix closure is not closed under products");
  };
  std::vector<Permutation> gens;
  for (int gi : mg.generator_indices) {
    const auto& g = mg.elements[gi];
    std::vector<std::uint16_t> img(n);
    for (int i = 0; i < n; ++i) {
      std::vector<Cyclotomic> prod(static_cast<std::size_t>(d) * d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          Cyclotomic s(0);
          for (int k = 0; k < d; ++k)
            s = s + g[static_cast<std::size_t>(r) * d + k] *
                        mg.elements[i][static_cast<std::size_t>(k) * d + c];
          prod[static_cast<std::size_t>(r) * d + c] = s;
        }
      img[i] = static_cast<std::uint16_t>(find_elt(prod));
    }
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n, std::move(gens), mg.name);
}

PermGroup load_perm_group(const std::string& path, int cap) {
  std::string text = read_text_file(path);
  switch (sniff_format(text)) {
    case DocKind::PermGroup:
      return parse_permgroup(text);
    case DocKind::MatRep:
      return regular_perm_group(expand_group(parse_matrep(text), cap));
    case DocKind::Table:
      throw ValidationError(path + " holds a character table; group generators are required");
  }
  throw ValidationError("unreachable input kind");
}

CharacterTable load_table(const std::string& path, const RunConfig& cfg) {
  std::string text = read_text_file(path);
  if (sniff_format(text) == DocKind::Table)
    return parse_table(text, !cfg.no_validate).table;
  CharacterTable t = compute_table(load_perm_group(path, cfg.cap));
  if (!cfg.no_validate) t.validate();
  return t;
}

// ---------------------------------------------------------------------------
// Output plumbing.

void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw Error("cannot open output file " + cfg.output);
  out << body;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// One csv line, quoting any field that contains a delimiter or quote.
std::string csv_line(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) s += ",";
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      s += f;
    } else {
      s += '"';
      for (char c : f) {
        if (c == '"') s += '"';
        s += c;
      }
      s += '"';
    }
  }
  return s + "\n";
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// table

int cmd_table(const RunConfig& cfg, const std::string& path) {
  CharacterTable t = load_table(path, cfg);
  std::string ctbl = write_table(t);
  if (cfg.format == "json") {
    json j;
    j["subcommand"] = "table";
    j["group"] = t.name;
    j["order"] = json_int(t.order);
    j["exponent"] = t.exponent;
    j["classes"] = t.num_classes();
    json degs = json::array();
    for (const auto& d : t.degrees()) degs.push_back(json_int(d));
    j["degrees"] = degs;
    j["validated"] = !cfg.no_validate;
    j["table"] = ctbl;
    emit(cfg, dump_json(j));
  } else if (cfg.format == "csv") {
    throw ValidationError("csv output applies to reports, not full tables; use text or json");
  } else {
    emit(cfg, ctbl);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// app

int cmd_app(const RunConfig& cfg, const std::string& path) {
  CharacterTable t = load_table(path, cfg);
  std::vector<Integer> ks = kernel_sizes(t);
  std::vector<AppPair> pairs = app_pairs(t, cfg.include_trivial, cfg.n_max);

  // Orbit representatives in first-appearance order, with orbit sizes.
  std::vector<int> rep_of;  // index into pairs
  std::vector<int> orbit_size;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    int id = pairs[i].galois_orbit;
    if (id == static_cast<int>(rep_of.size())) {
      rep_of.push_back(static_cast<int>(i));
      orbit_size.push_back(0);
    }
    ++orbit_size[id];
  }

  auto min_n_status = [](const MinN& m) {
    switch (m.status) {
      case MinN::Status::Found: return "found";
      case MinN::Status::NotFound: return "not_found";
      case MinN::Status::Never: return "never";
    }
    return "unknown";
  };

  if (cfg.format == "json") {
    json j;
    j["subcommand"] = "app";
    j["group"] = t.name;
    j["order"] = json_int(t.order);
    j["classes"] = t.num_classes();
    j["n_max"] = cfg.n_max;
    j["include_trivial"] = cfg.include_trivial;
    j["pair_count"] = pairs.size();
    j["orbit_count"] = rep_of.size();
    json orbits = json::array();
    for (std::size_t oid = 0; oid < rep_of.size(); ++oid) {
      const AppPair& p = pairs[rep_of[oid]];
      json o;
      o["orbit"] = oid;
      o["pairs"] = orbit_size[oid];
      o["f"] = {{"signature", row_signature(t, ks, p.f)}, {"degree", json_int(p.q)}};
      o["lambda"] = {{"signature", row_signature(t, ks, p.lambda)},
                     {"degree", json_int(p.K)},
                     {"kernel", json_int(p.kernel_lambda_size)}};
      o["q"] = json_int(p.q);
      o["K"] = json_int(p.K);
      o["transversal_order"] = json_int(p.transversal_order);
      o["min_n"] = {{"status", min_n_status(p.min_n)},
                    {"searched_up_to", p.min_n.searched_up_to}};
      if (p.min_n.status == MinN::Status::Found) {
        o["min_n"]["n"] = p.min_n.n;
        o["min_n"]["multiplicity"] = json_int(p.min_n.multiplicity);
        CodeReport cr = code_report(t, p, cfg.t_max);
        o["code"] = {{"n", cr.n},
                     {"K", json_int(cr.K)},
                     {"d", cr.d},
                     {"q", json_int(cr.q)},
                     {"N", json_int(int_pow(cr.q, cr.n))},
                     {"multiplicity", json_int(cr.multiplicity)},
                     {"max_unitary_t", cr.max_unitary_t},
                     {"twisted_moment_2_matches", cr.twisted_2_matches}};
      }
      orbits.push_back(std::move(o));
    }
    j["orbits"] = std::move(orbits);
    emit(cfg, dump_json(j));
  } else if (cfg.format == "csv") {
    std::string body = csv_line({"group", "order", "orbit", "pairs", "f_signature",
                                 "lambda_signature", "q", "K", "lambda_kernel",
                                 "transversal_order", "min_n_status", "min_n", "multiplicity",
                                 "N", "max_unitary_t"});
    for (std::size_t oid = 0; oid < rep_of.size(); ++oid) {
      const AppPair& p = pairs[rep_of[oid]];
      bool found = p.min_n.status == MinN::Status::Found;
      int max_t = 0;
      if (found) max_t = code_report(t, p, cfg.t_max).max_unitary_t;
      body += csv_line({t.name, str_int(t.order), std::to_string(oid),
                        std::to_string(orbit_size[oid]), row_signature(t, ks, p.f),
                        row_signature(t, ks, p.lambda), str_int(p.q), str_int(p.K),
                        str_int(p.kernel_lambda_size), str_int(p.transversal_order),
                        min_n_status(p.min_n), found ? std::to_string(p.min_n.n) : "",
                        found ? str_int(p.min_n.multiplicity) : "",
                        found ? str_int(int_pow(p.q, p.min_n.n)) : "",
                        found ? std::to_string(max_t) : ""});
    }
    emit(cfg, body);
  } else {
    std::ostringstream out;
    out << "group " << t.name << "  order " << str_int(t.order) << "  classes "
        << t.num_classes() << "\n";
    out << pairs.size() << " pair" << (pairs.size() == 1 ? "" : "s")
        << " with ||lambda*f|| = 1 in " << rep_of.size() << " orbit"
        << (rep_of.size() == 1 ? "" : "s") << " (n scanned up to " << cfg.n_max << ")\n";
    for (std::size_t oid = 0; oid < rep_of.size(); ++oid) {
      const AppPair& p = pairs[rep_of[oid]];
      out << "\norbit " << oid << " (" << orbit_size[oid] << " pair"
          << (orbit_size[oid] == 1 ? "" : "s") << ")\n";
      out << "  f      signature " << row_signature(t, ks, p.f) << "  degree "
          << str_int(p.q) << "\n";
      out << "  lambda signature " << row_signature(t, ks, p.lambda) << "  degree "
          << str_int(p.K) << "  kernel " << str_int(p.kernel_lambda_size)
          << "  transversal order " << str_int(p.transversal_order) << "\n";
      if (p.min_n.status == MinN::Status::Found) {
        CodeReport cr = code_report(t, p, cfg.t_max);
        out << "  min n = " << p.min_n.n << "  multiplicity "
            << str_int(p.min_n.multiplicity) << "  N = " << str_int(p.q) << "^" << p.min_n.n
            << " = " << str_int(int_pow(p.q, p.min_n.n)) << "\n";
        out << "  code ((" << cr.n << ", " << str_int(cr.K) << ", " << cr.d << "))_"
            << str_int(cr.q) << "  max unitary t = " << cr.max_unitary_t << "\n";
      } else if (p.min_n.status == MinN::Status::Never) {
        out << "  min n: never (kernel obstruction)\n";
      } else {
        out << "  min n: not found up to " << p.min_n.searched_up_to << "\n";
      }
    }
    emit(cfg, out.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// minn

int cmd_minn(const RunConfig& cfg, const std::string& path, const std::string& f_sig,
             const std::string& l_sig) {
  CharacterTable t = load_table(path, cfg);
  std::vector<Integer> ks = kernel_sizes(t);
  int f = resolve_signature(t, ks, parse_signature(f_sig), "f");
  int l = resolve_signature(t, ks, parse_signature(l_sig), "lambda");
  MinN m = min_n(t, f, l, cfg.n_max);

  if (cfg.format == "json") {
    json j;
    j["subcommand"] = "minn";
    j["group"] = t.name;
    j["f"] = {{"signature", row_signature(t, ks, f)}, {"degree", json_int(t.degree(f))}};
    j["lambda"] = {{"signature", row_signature(t, ks, l)},
                   {"degree", json_int(t.degree(l))},
                   {"kernel", json_int(ks[l])}};
    j["n_max"] = cfg.n_max;
    switch (m.status) {
      case MinN::Status::Found:
        j["status"] = "found";
        j["n"] = m.n;
        j["multiplicity"] = json_int(m.multiplicity);
        j["N"] = json_int(int_pow(t.degree(f), m.n));
        break;
      case MinN::Status::NotFound:
        j["status"] = "not_found";
        j["searched_up_to"] = m.searched_up_to;
        break;
      case MinN::Status::Never:
        j["status"] = "never";
        j["reason"] = "kernel obstruction: ker(f) is not contained in ker(lambda)";
        break;
    }
    emit(cfg, dump_json(j));
  } else if (cfg.format == "csv") {
    std::string body = csv_line(
        {"group", "f_signature", "lambda_signature", "n_max", "status", "n", "multiplicity"});
    bool found = m.status == MinN::Status::Found;
    body += csv_line({t.name, row_signature(t, ks, f), row_signature(t, ks, l),
                      std::to_string(cfg.n_max),
                      m.status == MinN::Status::Found    ? "found"
                      : m.status == MinN::Status::Never  ? "never"
                                                         : "not_found",
                      found ? std::to_string(m.n) : "",
                      found ? str_int(m.multiplicity) : ""});
    emit(cfg, body);
  } else {
    std::ostringstream out;
    out << "group " << t.name << "  f " << row_signature(t, ks, f) << "  lambda "
        << row_signature(t, ks, l) << "\n";
    switch (m.status) {
      case MinN::Status::Found:
        out << "min n = " << m.n << "  multiplicity " << str_int(m.multiplicity) << "  N = "
            << str_int(t.degree(f)) << "^" << m.n << " = "
            << str_int(int_pow(t.degree(f), m.n)) << "\n";
        break;
      case MinN::Status::NotFound:
        out << "no n <= " << m.searched_up_to << " with positive multiplicity\n";
        break;
      case MinN::Status::Never:
        out << "never: kernel obstruction (ker(f) is not contained in ker(lambda); "
               "<lambda, f^n> = 0 for all n)\n";
        break;
    }
    emit(cfg, out.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const RunConfig& cfg, const std::string& mat_path, std::string table_path,
               const std::string& l_sig, int n, int weight) {
  MatRep rep = parse_matrep(read_text_file(mat_path));
  CharacterTable t;
  if (table_path.empty()) {
    t = compute_table(regular_perm_group(expand_group(rep, cfg.cap)));
    if (!cfg.no_validate) t.validate();
  } else {
    t = load_table(table_path, cfg);
  }
  std::vector<Integer> ks = kernel_sizes(t);
  int lam = resolve_signature(t, ks, parse_signature(l_sig), "lambda");

  CodeCertificate cert =
      certify(rep, t, lam, n, weight, cfg.tol, cfg.seed, cfg.cap, cfg.threads);

  if (cfg.format == "json") {
    json j;
    j["subcommand"] = "verify";
    j["group"] = cert.group;
    j["group_order"] = json_int(cert.group_order);
    j["lambda"] = {{"signature", row_signature(t, ks, cert.lambda_row)},
                   {"degree", json_int(t.degree(cert.lambda_row))},
                   {"kernel", json_int(ks[cert.lambda_row])}};
    j["f"] = {{"signature", row_signature(t, ks, cert.f_row)},
              {"degree", json_int(t.degree(cert.f_row))}};
    j["n"] = cert.n;
    j["K"] = cert.K;
    j["q"] = cert.q;
    j["multiplicity"] = json_int(cert.multiplicity);
    j["projector_rank"] = cert.projector_rank;
    j["projector_error"] = format_double(cert.projector_error);
    j["trace_error"] = format_double(cert.trace_error);
    json res = json::array();
    for (double r : cert.kl_residuals) res.push_back(format_double(r));
    j["kl_residuals"] = res;
    j["achieved_distance"] = cert.achieved_distance;
    j["transversal_error"] = format_double(cert.transversal_error);
    j["logical_unitaries"] = cert.logical_unitaries;
    j["tolerance"] = format_double(cert.tolerance);
    j["seed"] = cfg.seed;
    emit(cfg, dump_json(j));
  } else if (cfg.format == "csv") {
    std::string body = csv_line({"group", "n", "K", "q", "multiplicity", "achieved_distance",
                                 "residual_weight", "residual", "transversal_error",
                                 "logical_unitaries", "tolerance"});
    for (std::size_t w = 0; w < cert.kl_residuals.size(); ++w)
      body += csv_line({cert.group, std::to_string(cert.n), std::to_string(cert.K),
                        std::to_string(cert.q), str_int(cert.multiplicity),
                        std::to_string(cert.achieved_distance), std::to_string(w + 1),
                        format_double(cert.kl_residuals[w]),
                        format_double(cert.transversal_error),
                        std::to_string(cert.logical_unitaries),
                        format_double(cert.tolerance)});
    emit(cfg, body);
  } else {
    std::ostringstream out;
    out << "group " << cert.group << "  order " << str_int(cert.group_order) << "\n";
    out << "code ((" << cert.n << ", " << cert.K << ", " << cert.achieved_distance + 1
        << "))_" << cert.q << "  multiplicity " << str_int(cert.multiplicity) << "\n";
    out << "projector rank " << cert.projector_rank << "  ||P^2 - P|| = "
        << format_double(cert.projector_error) << "  trace error "
        << format_double(cert.trace_error) << "\n";
    for (std::size_t w = 0; w < cert.kl_residuals.size(); ++w) {
      bool pass = cert.kl_residuals[w] <= cert.tolerance;
      out << "residual(weight " << (w + 1) << ") = " << format_double(cert.kl_residuals[w])
          << (pass ? "  <= tol " : "  >  tol ") << format_double(cert.tolerance)
          << (pass ? "  [certifies d >= " + std::to_string(w + 2) + "]" : "") << "\n";
    }
    out << "achieved distance >= " << cert.achieved_distance << "\n";
    out << "transversal residual " << format_double(cert.transversal_error) << "  logical "
        << "unitaries (mod phase) " << cert.logical_unitaries << "\n";
    emit(cfg, out.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// family

int cmd_family(const RunConfig& cfg, const std::string& tag, int b) {
  FamilyParams fp;
  if (tag == "sp")
    fp = sp_weil_params(b);
  else if (tag == "su")
    fp = su_weil_params(b);
  else
    throw ValidationError("family tag must be sp or su, got \"" + tag + "\"");

  if (cfg.format == "json") {
    json j;
    j["subcommand"] = "family";
    j["family"] = tag == "sp" ? "Sp(2b,3)" : "SU(b,2)";
    j["b"] = b;
    json degs = json::array();
    for (const auto& d : fp.degrees) degs.push_back(json_int(d));
    j["character_degrees"] = degs;
    j["applicable"] = fp.applicable;
    if (fp.applicable) {
      j["K"] = json_int(fp.K);
      j["q"] = json_int(fp.q);
    } else {
      j["reason"] = "the candidate f has a nontrivial kernel (3 divides b)";
    }
    emit(cfg, dump_json(j));
  } else if (cfg.format == "csv") {
    std::string body = csv_line({"family", "b", "K", "q", "applicable"});
    body += csv_line({tag, std::to_string(b), fp.applicable ? str_int(fp.K) : "",
                      fp.applicable ? str_int(fp.q) : "", fp.applicable ? "true" : "false"});
    emit(cfg, body);
  } else {
    std::ostringstream out;
    out << (tag == "sp" ? "Sp(" + std::to_string(2 * b) + ",3)"
                        : "SU(" + std::to_string(b) + ",2)")
        << " Weil characters, degrees";
    for (const auto& d : fp.degrees) out << " " << str_int(d);
    out << "\n";
    if (fp.applicable)
      out << "K = " << str_int(fp.K) << "  q = " << str_int(fp.q) << "\n";
    else
      out << "not applicable: the candidate f has a nontrivial kernel (3 divides b)\n";
    emit(cfg, out.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// moment

int cmd_moment(const RunConfig& cfg, std::int64_t q, int t) {
  Integer m = haar_moment(q, t);
  if (cfg.format == "json") {
    json j;
    j["subcommand"] = "moment";
    j["q"] = q;
    j["t"] = t;
    j["moment"] = json_int(m);
    emit(cfg, dump_json(j));
  } else if (cfg.format == "csv") {
    emit(cfg, csv_line({"q", "t", "moment"}) +
                  csv_line({std::to_string(q), std::to_string(t), str_int(m)}));
  } else {
    std::ostringstream out;
    out << "integral of |tr U|^" << 2 * t << " over U(" << q << ") = " << str_int(m) << "\n";
    emit(cfg, out.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Error reporting.

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const CapExceeded*>(&e)) return "CapExceeded";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const NonIntegerResult*>(&e)) return "NonIntegerResult";
  if (dynamic_cast<const DimensionGuard*>(&e)) return "DimensionGuard";
  if (dynamic_cast<const MultiplicityZero*>(&e)) return "MultiplicityZero";
  if (dynamic_cast<const DegenerateSplit*>(&e)) return "DegenerateSplit";
  if (dynamic_cast<const InternalSplitFailure*>(&e)) return "InternalSplitFailure";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "Unexpected";
}

int report_error(const RunConfig& cfg, const std::exception& e) {
  const char* kind = error_kind(e);
  if (cfg.format == "json") {
    json j;
    j["error"] = {{"type", kind}, {"message", e.what()}};
    std::cout << dump_json(j);
  } else {
    std::cerr << "error (" << kind << "): " << e.what() << "\n";
  }
  return dynamic_cast<const CapExceeded*>(&e) ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twirl: exact character tables, twisted unitary 1-groups, and code certification"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--format", cfg.format, "output format: text, json, or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("-o,--output", cfg.output, "write the report to this file instead of stdout");
  app.add_option("--n-max", cfg.n_max, "largest tensor power scanned for min n")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--t-max", cfg.t_max, "largest t tried in unitary t-moment checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol", cfg.tol,
                 "residual tolerance for verify (< 0: scale-aware 1e-9 * q^n)");
  app.add_option("--threads", cfg.threads, "worker threads for projector assembly")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed for code-block extraction")
      ->capture_default_str();
  app.add_option("--cap", cfg.cap, "group enumeration cap for matrix closures")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--no-validate", cfg.no_validate,
               "skip exact orthogonality validation when loading or computing tables");
  app.add_flag("--include-trivial", cfg.include_trivial,
               "include degree-1 twist characters in pair searches");

  std::string in_path, mat_path, table_path, f_sig, l_sig, family_tag;
  int verify_n = 0, verify_weight = 2, family_b = 0, moment_t = 0;
  std::int64_t moment_q = 0;

  CLI::App* c_table = app.add_subcommand(
      "table", "compute a character table from permutation or matrix generators");
  c_table->add_option("file", in_path, "PERMGROUP, MATREP, or CTBL input")->required();

  CLI::App* c_app = app.add_subcommand(
      "app", "list (faithful f, lambda) pairs with ||lambda*f|| = 1, by Galois orbit");
  c_app->add_option("file", in_path, "PERMGROUP, MATREP, or CTBL input")->required();

  CLI::App* c_minn = app.add_subcommand("minn", "smallest n with <lambda, f^n> > 0");
  c_minn->add_option("file", in_path, "PERMGROUP, MATREP, or CTBL input")->required();
  c_minn->add_option("--f", f_sig, "signature DEG[:KER[:IDX]] of the power character f")
      ->required();
  c_minn->add_option("--lambda", l_sig, "signature DEG[:KER[:IDX]] of the target lambda")
      ->required();

  CLI::App* c_verify = app.add_subcommand(
      "verify", "numerically certify the code cut out by an isotypic projector");
  c_verify->add_option("matrep", mat_path, "MATREP input defining the matrix group")
      ->required();
  c_verify->add_option("table", table_path,
                       "character table (computed from the matrix group when omitted)");
  c_verify->add_option("--lambda", l_sig, "signature DEG[:KER[:IDX]] of lambda")->required();
  c_verify->add_option("--n", verify_n, "tensor power (code length)")
      ->required()
      ->check(CLI::PositiveNumber);
  c_verify->add_option("--weight", verify_weight, "largest error weight to test")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* c_family = app.add_subcommand("family", "Weil-family degree parameters");
  c_family->add_option("tag", family_tag, "sp (Sp(2b,3)) or su (SU(b,2))")->required();
  c_family->add_option("b", family_b, "family index b")->required()->check(CLI::PositiveNumber);

  CLI::App* c_moment = app.add_subcommand("moment", "exact Haar moment of |tr U|^(2t)");
  c_moment->add_option("q", moment_q, "unitary group dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  c_moment->add_option("t", moment_t, "moment order t")->required()->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_table->parsed()) return cmd_table(cfg, in_path);
    if (c_app->parsed()) return cmd_app(cfg, in_path);
    if (c_minn->parsed()) return cmd_minn(cfg, in_path, f_sig, l_sig);
    if (c_verify->parsed())
      return cmd_verify(cfg, mat_path, table_path, l_sig, verify_n, verify_weight);
    if (c_family->parsed()) return cmd_family(cfg, family_tag, family_b);
    if (c_moment->parsed()) return cmd_moment(cfg, moment_q, moment_t);
  } catch (const std::exception& e) {
    return report_error(cfg, e);
  }
  return 1;
}
