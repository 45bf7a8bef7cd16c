// Copyright 2026 The srlz Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// srlz command-line front end: analyze, encode, decode, verify, region.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "srlz.hpp"

namespace {

using json = nlohmann::json;
using namespace srlz;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kInfeasible:
      return kExitBudget;
    default:
      return kExitUsage;
  }
}

// ---- files and sequence formats ----

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::kIo, "read error on '" + path + "'");
  return data;
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot create '" + path + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) fail(ErrorCode::kIo, "write error on '" + path + "'");
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  const std::string s = read_file(path);
  return {s.begin(), s.end()};
}

constexpr std::string_view kTokenHeader = "#alphabet";

enum class Format { kAuto, kBytes, kTokens };

Format parse_format(const std::string& s) {
  if (s == "auto") return Format::kAuto;
  if (s == "bytes") return Format::kBytes;
  if (s == "tokens") return Format::kTokens;
  fail(ErrorCode::kInvalidArgument, "unknown format '" + s + "'");
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Token format: a "#alphabet s1 s2 ..." header, then one symbol per line.
// Blank lines and later lines starting with '#' are ignored.
Sequence parse_tokens(const std::string& text, const std::string& path) {
  std::istringstream in(text);
  std::string line;
  std::optional<Alphabet> alphabet;
  std::vector<Symbol> data;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (!alphabet) {
      if (toks[0] != kTokenHeader) fail(ErrorCode::kFormat, where + ": expected '#alphabet' header");
      if (toks.size() < 2) fail(ErrorCode::kFormat, where + ": empty alphabet");
      try {
        alphabet = Alphabet(std::vector<std::string>(toks.begin() + 1, toks.end()));
      } catch (const Error& e) {
        fail(ErrorCode::kFormat, where + ": " + e.what());
      }
      continue;
    }
    if (toks[0][0] == '#') continue;
    if (toks.size() != 1) fail(ErrorCode::kFormat, where + ": one symbol per line");
    const auto s = alphabet->index_of(toks[0]);
    if (!s) fail(ErrorCode::kFormat, where + ": symbol '" + toks[0] + "' not in alphabet");
    data.push_back(*s);
  }
  if (!alphabet) fail(ErrorCode::kFormat, path + ": missing '#alphabet' header");
  return Sequence(*alphabet, std::move(data));
}

struct Loaded {
  std::string path;
  std::string format;
  Sequence seq;
};

Loaded load_sequence(const std::string& path, Format format) {
  const std::string text = read_file(path);
  if (format == Format::kAuto) {
    format = text.rfind(kTokenHeader, 0) == 0 ? Format::kTokens : Format::kBytes;
  }
  if (format == Format::kTokens) return {path, "tokens", parse_tokens(text, path)};
  return {path, "bytes", Sequence::from_string(text)};
}

bool byte_representable(const Alphabet& a) {
  if (a.is_indexed()) return false;
  for (const auto& s : a.symbols()) {
    if (s.size() != 1) return false;
  }
  return true;
}

std::string render_sequence(const Sequence& seq, Format format) {
  if (format == Format::kAuto) format = byte_representable(seq.alphabet()) ? Format::kBytes : Format::kTokens;
  if (format == Format::kBytes) {
    if (!byte_representable(seq.alphabet())) fail(ErrorCode::kFormat, "alphabet has multi-byte symbols; use --format tokens");
    return seq.to_string();
  }
  const auto names = seq.alphabet().symbols();
  for (const auto& s : names) {
    const auto toks = split_ws(s);
    if (s[0] == '#' || toks.size() != 1 || toks[0] != s) {
      fail(ErrorCode::kFormat, "symbol cannot be written as a token; use --format bytes");
    }
  }
  std::string out(kTokenHeader);
  for (const auto& s : names) out += " " + s;
  out += "\n";
  for (Symbol v : seq.data()) out += names[v] + "\n";
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json describe(const Loaded& l) {
  return {{"path", l.path},
          {"format", l.format},
          {"n", l.seq.size()},
          {"alphabet_size", l.seq.alphabet().size()},
          {"checksum", hex64(checksum(l.seq))}};
}

json describe_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  Fnv1a h;
  h.add_bytes(bytes);
  return {{"path", path}, {"bytes", bytes.size()}, {"checksum", hex64(h.value())}};
}

json region_json(const HalfPlaneRegion& r) {
  json j = {{"a", r.a}, {"b", r.b}, {"raw_a", r.raw_a}, {"raw_b", r.raw_b},
            {"clamped_a", r.clamped_a}, {"clamped_b", r.clamped_b}};
  if (r.has_floor) {
    j["c"] = r.c;
    j["raw_c"] = r.raw_c;
    j["clamped_c"] = r.clamped_c;
  }
  return j;
}

json md_region_json(const MdRegion& r) {
  return {{"kind", md_kind_name(r.kind)}, {"a", r.a}, {"b", r.b}, {"c", r.c},
          {"raw_a", r.raw_a}, {"raw_b", r.raw_b}, {"raw_c", r.raw_c},
          {"clamped_a", r.clamped_a}, {"clamped_b", r.clamped_b}, {"clamped_c", r.clamped_c}};
}

json points_json(const std::vector<RatePoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({{"r1", p.r1}, {"r2", p.r2}});
  return arr;
}

json suite_json(const SuiteResult& r) {
  return {{"suite", r.suite}, {"checked", r.checked}, {"passed", r.passed}, {"failed", r.failed()},
          {"exhaustive", r.exhaustive}, {"stats", r.stats}, {"violations", r.violations}};
}

// ---- shared options ----

struct Common {
  std::string report;
  std::string format = "auto";
  std::string eps_mode;
  bool timing = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--report", c.report, "Write the JSON report here instead of stdout");
  app->add_option("--format", c.format, "Sequence file format: auto, bytes or tokens")
      ->check(CLI::IsMember({"auto", "bytes", "tokens"}));
  app->add_option("--eps-mode", c.eps_mode, "eps_n mode: default, zero or a constant in [0, 1)");
  app->add_flag("--timing", c.timing, "Add wall-clock timing to the report");
}

EpsSpec eps_from(const Common& c) {
  if (!c.eps_mode.empty()) return EpsSpec::parse(c.eps_mode);
  if (const char* env = std::getenv("SRLZ_EPS_MODE"); env && *env) return EpsSpec::parse(env);
  return {};
}

json new_report(const std::string& command) {
  return {{"report_version", 1}, {"command", command}, {"inputs", json::object()},
          {"parameters", json::object()}, {"results", json::object()}};
}

void emit(const json& report, const Common& c) {
  const std::string text = report.dump(2) + "\n";
  if (c.report.empty()) {
    std::cout << text;
  } else {
    write_file(c.report, text);
  }
}

struct DistortionOptions {
  std::string distortion = "hamming";
  double d1 = 0.0, d2 = 0.0, d0 = 0.0;
  std::string objective = "weighted:0.5";
  std::string search = "auto";
  std::uint64_t budget = 20000;
  std::uint64_t seed = 1;
};

void add_distortion(CLI::App* app, DistortionOptions& d) {
  app->add_option("--distortion", d.distortion, "Per-letter distortion: hamming or absdiff");
  app->add_option("--d1", d.d1, "Distortion level D1 (per symbol)");
  app->add_option("--d2", d.d2, "Distortion level D2 (per symbol)");
  app->add_option("--d0", d.d0, "Distortion level D0 for the central decoder (MD)");
  app->add_option("--objective", d.objective, "min-r1, min-sum or weighted:<w>");
  app->add_option("--search", d.search, "auto, exhaustive or heuristic")
      ->check(CLI::IsMember({"auto", "exhaustive", "heuristic"}));
  app->add_option("--budget", d.budget, "Heuristic search evaluations");
  app->add_option("--seed", d.seed, "Search seed");
}

SearchStrategy strategy_from(const DistortionOptions& d) {
  SearchStrategy s;
  s.mode = d.search == "exhaustive" ? SearchStrategy::Mode::kExhaustive
           : d.search == "heuristic" ? SearchStrategy::Mode::kHeuristic
                                     : SearchStrategy::Mode::kAuto;
  s.budget = d.budget;
  s.seed = d.seed;
  return s;
}

json distortion_params(const DistortionOptions& d) {
  return {{"distortion", d.distortion}, {"d1", d.d1}, {"d2", d.d2}, {"d0", d.d0},
          {"objective", Objective::parse(d.objective).name()}, {"search", d.search},
          {"budget", d.budget}, {"seed", d.seed}};
}

Mode mode_from_cli(const std::string& m) {
  if (m == "lz") return Mode::kLz;
  if (m == "cond") return Mode::kCond;
  if (m == "sr") return Mode::kSr;
  if (m == "md-egc") return Mode::kMd1;
  if (m == "md-zb") return Mode::kMd2;
  fail(ErrorCode::kInvalidArgument, "unknown mode '" + m + "'");
}

std::string cli_mode_name(Mode m) {
  switch (m) {
    case Mode::kLz: return "lz";
    case Mode::kCond: return "cond";
    case Mode::kSr: return "sr";
    case Mode::kMd1: return "md-egc";
    case Mode::kMd2: return "md-zb";
  }
  return "?";
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- analyze ----

struct AnalyzeOptions {
  Common common;
  std::string input, side, fsm;
  std::uint64_t block_len = 1;
  std::uint64_t q = 1;
  bool phrases = false;
};

std::string divisor_list(std::uint64_t n) {
  std::string s;
  for (std::uint64_t d : divisors(n)) s += (s.empty() ? "" : ", ") + std::to_string(d);
  return "{" + s + "}";
}

int cmd_analyze(const AnalyzeOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const EpsSpec eps = eps_from(o.common);
  const Format fmt = parse_format(o.common.format);
  const Loaded in = load_sequence(o.input, fmt);
  const Sequence& x = in.seq;
  const std::uint64_t n = x.size();
  if (o.block_len == 0 || (n > 0 && n % o.block_len != 0)) {
    fail(ErrorCode::kBlockLength, "block length " + std::to_string(o.block_len) + " does not divide n = " +
                                      std::to_string(n) + "; divisors of n: " + divisor_list(n));
  }
  if (o.q == 0) fail(ErrorCode::kInvalidArgument, "q must be positive");

  json rep = new_report("analyze");
  rep["inputs"]["input"] = describe(in);
  rep["parameters"] = {{"block_len", o.block_len}, {"q", o.q}, {"eps_mode", eps.name()}};

  const ParseResult p = parse(x);
  json lz = {{"phrase_count", p.phrase_count},
             {"last_incomplete", p.is_last_incomplete},
             {"rho_lz", p.rho_lz},
             {"code_len_bound", p.code_len_bound},
             {"payload_bits", lz_encode(x).payload_bits}};
  if (o.phrases) {
    json arr = json::array();
    for (const Phrase& ph : p.phrases) arr.push_back(x.slice(ph.start, ph.length).to_string());
    lz["phrases"] = arr;
  }
  rep["results"]["lz"] = lz;

  const std::size_t beta = x.alphabet().size();
  if (n >= 2) {
    const double e = eps_n(n, beta, eps);
    const InequalityReport ineq = check_entropy_inequality(x, o.block_len, eps);
    rep["results"]["bounds"] = {{"eps_n", e},
                                {"delta1", delta1(o.q, n, beta, e)},
                                {"eps_slack", eps_slack(n, beta, e)},
                                {"eps_hat", eps_hat(n)}};
    rep["results"]["entropy_inequality"] = {{"block_len", o.block_len}, {"lhs", ineq.lhs}, {"rhs", ineq.rhs},
                                            {"delta_n", ineq.slack}, {"holds", ineq.holds}};
  }

  std::optional<Loaded> side;
  if (!o.side.empty()) {
    side = load_sequence(o.side, fmt);
    const Sequence& y = side->seq;
    require_same_length(n, y.size(), "analyze");
    rep["inputs"]["side"] = describe(*side);
    const JointParseResult j = joint_parse(y, x);
    json cond = {{"c_joint", j.joint_count},
                 {"c_prime", j.distinct_primary},
                 {"c_l", j.occurrence_counts},
                 {"rho_cond", j.rho_cond},
                 {"rho_joint", j.rho_joint},
                 {"payload_bits", cond_encode(x, y).payload_bits}};
    if (n >= 2) {
      const std::size_t side_beta = y.alphabet().size();
      const double e = eps_n(n, side_beta, eps);
      const Delta2 d2 = delta2(o.q, n, side_beta, beta, e);
      const InequalityReport ci = check_cond_entropy_inequality(x, y, o.block_len, eps);
      cond["delta2"] = {{"value", d2.value}, {"argmin_block_len", d2.argmin_block_len}};
      cond["region"] = region_json(region_for_pair(y, x, BoundConfig{o.q, eps}));
      cond["entropy_inequality"] = {{"block_len", o.block_len}, {"lhs", ci.lhs}, {"rhs", ci.rhs},
                                    {"delta_n_prime", ci.slack}, {"holds", ci.holds}};
    }
    rep["results"]["cond"] = cond;
  }

  bool violation = false;
  if (!o.fsm.empty()) {
    if (!side) fail(ErrorCode::kInvalidArgument, "--fsm needs --side (the stage-1 sequence)");
    const FsmEncoder e = FsmEncoder::parse(read_file(o.fsm));
    rep["inputs"]["fsm"] = {{"path", o.fsm}};
    const std::size_t depth = default_lossless_depth(e);
    const ConverseReport c = converse_check(e, side->seq, x, depth, eps);
    json cj = {{"applicable", c.applicable}, {"lossless_depth", c.lossless_depth}};
    if (c.applicable) {
      cj["rho1"] = c.rho1;
      cj["rho12"] = c.rho12;
      cj["bound_i"] = c.bound_i;
      cj["bound_ii"] = c.bound_ii;
      cj["bound_iii"] = c.bound_iii;
      cj["holds"] = {c.holds_i, c.holds_ii, c.holds_iii};
      violation = !c.holds();
    }
    rep["results"]["converse"] = cj;
  }
  if (o.common.timing) rep["timing"] = {{"seconds", elapsed(t0)}};
  emit(rep, o.common);
  return violation ? kExitViolation : kExitOk;
}

// ---- encode ----

struct EncodeOptions {
  Common common;
  DistortionOptions dist;
  std::string mode;
  std::string input, output, side, hat, tilde, central, u_file;
  double split = 0.5;
  double alpha = 0.5;
  std::uint64_t q = 1;
};

DistortionSpec sr_spec(const DistortionOptions& d) {
  DistortionSpec s;
  s.d1 = s.d2 = s.d0 = Distortion::parse(d.distortion);
  s.level1 = d.d1;
  s.level2 = d.d2;
  s.level0 = d.d0;
  s.validate();
  return s;
}

json rates_floor_ceiling(const Sequence& hat, const Sequence& tilde, std::uint64_t bits1, std::uint64_t bits2,
                         const BoundConfig& cfg) {
  const std::uint64_t n = hat.size();
  const double r1 = n ? static_cast<double>(bits1) / static_cast<double>(n) : 0.0;
  const double r2 = n ? static_cast<double>(bits2) / static_cast<double>(n) : 0.0;
  json j = {{"bits1", bits1}, {"bits2", bits2}, {"r1", r1}, {"r2", r2}, {"rho_lz", rho_lz(hat)},
            {"rho_cond", rho_cond(tilde, hat)}};
  if (n >= 2) {
    j["floor"] = region_json(region_for_pair(hat, tilde, cfg));
    j["ceiling"] = region_json(blockwise_region(hat, tilde, n, BlockSide::kInnerPlus, cfg));
  }
  return j;
}

int cmd_encode(const EncodeOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const EpsSpec eps = eps_from(o.common);
  const BoundConfig cfg{o.q, eps};
  const Format fmt = parse_format(o.common.format);
  const Mode mode = mode_from_cli(o.mode);
  json rep = new_report("encode");
  rep["parameters"] = {{"mode", o.mode}, {"q", o.q}, {"eps_mode", eps.name()}};

  std::optional<Loaded> x;
  if (!o.input.empty()) {
    x = load_sequence(o.input, fmt);
    rep["inputs"]["input"] = describe(*x);
  }
  auto need_x = [&]() -> const Sequence& {
    if (!x) fail(ErrorCode::kInvalidArgument, "mode " + o.mode + " needs an input sequence");
    return x->seq;
  };
  auto load_named = [&](const std::string& key, const std::string& path) {
    Loaded l = load_sequence(path, fmt);
    rep["inputs"][key] = describe(l);
    return l.seq;
  };

  if (mode == Mode::kLz) {
    const Bitstream bs = lz_encode(need_x());
    const auto bytes = bs.serialize();
    write_bytes(o.output, bytes);
    rep["results"] = {{"payload_bits", bs.payload_bits}, {"phrase_count", bs.phrase_count},
                      {"rho_lz", rho_lz(x->seq)}, {"output", describe_file(o.output, bytes)}};
    if (x->seq.size() >= 2) {
      rep["results"]["ceiling_bits"] = clogc(static_cast<double>(bs.phrase_count)) +
                                       static_cast<double>(x->seq.size()) *
                                           eps_slack(x->seq.size(), x->seq.alphabet().size(), eps);
    }
  } else if (mode == Mode::kCond) {
    if (o.side.empty()) fail(ErrorCode::kInvalidArgument, "mode cond needs --side");
    const Sequence side = load_named("side", o.side);
    const Sequence& s = need_x();
    const Bitstream bs = cond_encode(s, side);
    const auto bytes = bs.serialize();
    write_bytes(o.output, bytes);
    const double rc = rho_cond(s, side);
    rep["results"] = {{"payload_bits", bs.payload_bits}, {"phrase_count", bs.phrase_count}, {"rho_cond", rc},
                      {"output", describe_file(o.output, bytes)}};
    if (s.size() >= 2) {
      rep["results"]["ceiling_bits"] = static_cast<double>(s.size()) * (rc + eps_hat(s.size()));
    }
  } else if (mode == Mode::kSr) {
    Sequence hat, tilde;
    if (!o.hat.empty() || !o.tilde.empty()) {
      if (o.hat.empty() || o.tilde.empty()) fail(ErrorCode::kInvalidArgument, "--hat and --tilde go together");
      hat = load_named("hat", o.hat);
      tilde = load_named("tilde", o.tilde);
      if (x) {
        const DistortionSpec spec = sr_spec(o.dist);
        rep["results"]["in_ball"] = in_ball(x->seq, hat, tilde, spec);
      }
    } else {
      const Sequence& src = need_x();
      const Objective obj = Objective::parse(o.dist.objective);
      const Selection sel = select_reproductions(src, sr_spec(o.dist), obj, strategy_from(o.dist));
      hat = sel.primary;
      tilde = sel.secondary;
      rep["parameters"]["search"] = distortion_params(o.dist);
      rep["results"]["selection"] = {{"objective_value", sel.objective}, {"exhaustive", sel.exhaustive},
                                     {"evaluated", sel.evaluated}};
    }
    const SrEncoded e = sr_encode(hat, tilde);
    const auto bytes = e.to_container().serialize();
    write_bytes(o.output, bytes);
    rep["results"]["rates"] = rates_floor_ceiling(hat, tilde, e.stage1->payload_bits, e.stage2->payload_bits, cfg);
    rep["results"]["output"] = describe_file(o.output, bytes);
  } else {
    Sequence hat, tilde, central;
    if (!o.hat.empty() || !o.tilde.empty() || !o.central.empty()) {
      if (o.hat.empty() || o.tilde.empty() || o.central.empty()) {
        fail(ErrorCode::kInvalidArgument, "--hat, --tilde and --central go together");
      }
      hat = load_named("hat", o.hat);
      tilde = load_named("tilde", o.tilde);
      central = load_named("central", o.central);
    } else {
      // (x^, x_) from one search under (d1, D1) and (d0, D0); x~ from a
      // second search under (d2, D2).
      const Sequence& src = need_x();
      const Distortion d = Distortion::parse(o.dist.distortion);
      DistortionSpec first;
      first.d1 = first.d2 = d;
      first.level1 = o.dist.d1;
      first.level2 = o.dist.d0;
      DistortionSpec second;
      second.d1 = second.d2 = d;
      second.level1 = o.dist.d2;
      second.level2 = 0.0;
      const SearchStrategy st = strategy_from(o.dist);
      const Selection s1 = select_reproductions(src, first, Objective::parse(o.dist.objective), st);
      const Selection s2 = select_reproductions(src, second, Objective::min_r1(), st);
      hat = s1.primary;
      central = s1.secondary;
      tilde = s2.primary;
      rep["parameters"]["search"] = distortion_params(o.dist);
      rep["results"]["selection"] = {{"exhaustive", s1.exhaustive && s2.exhaustive},
                                     {"evaluated", s1.evaluated + s2.evaluated}};
    }
    MdEncoded enc;
    json extra;
    if (mode == Mode::kMd1) {
      enc = egc_encode(hat, tilde, central, o.split);
      rep["parameters"]["split"] = o.split;
      const EmpiricalMutualInfo mi = empirical_mi(hat, tilde);
      extra["mutual_info"] = mi.value;
      if (hat.size() >= 2) {
        const MdRegion outer = md_outer_region(hat, tilde, central, cfg);
        extra["outer"] = md_region_json(outer);
        extra["inner"] = md_region_json(egc_inner_region(hat, tilde, central, eps));
        extra["sum_gap_to_outer"] = enc.rates.r1() + enc.rates.r2() - outer.c;
      }
    } else {
      Sequence u;
      if (!o.u_file.empty()) {
        u = load_named("u", o.u_file);
      } else {
        u = coarse_auxiliary(x ? x->seq : hat);
        rep["parameters"]["u"] = "coarse:2";
      }
      enc = zb_encode(hat, tilde, central, u, o.alpha);
      rep["parameters"]["alpha"] = o.alpha;
      const Sequence pair[] = {hat, tilde};
      const Sequence triple[] = {hat, tilde, u};
      const double ru = rho_lz(u);
      const double rpair = rho_cond(pack(pair), u);
      const double rcentral = rho_cond(central, triple);
      const EmpiricalMutualInfo mi = empirical_mi(hat, tilde, u);
      extra["mutual_info_given_u"] = mi.value;
      extra["sum_decomposition"] = {{"rho_u", ru}, {"rho_pair_given_u", rpair}, {"rho_central", rcentral},
                                    {"value", 2.0 * ru + rpair + rcentral + mi.value}};
      if (hat.size() >= 2) {
        extra["outer"] = md_region_json(md_outer_region(hat, tilde, central, cfg));
        extra["inner"] = md_region_json(zb_inner_region(hat, tilde, central, u, eps));
      }
    }
    const MdRates& r = enc.rates;
    rep["parameters"]["delta2_choice"] = "two-stage";
    extra["bits"] = {{"primary", r.bits_primary}, {"secondary", r.bits_secondary}, {"aux", r.bits_aux},
                     {"refine", r.bits_refine}, {"share1", r.bits_share1}, {"share2", r.bits_share2}};
    extra["r1"] = r.r1();
    extra["r2"] = r.r2();
    const auto b1 = enc.description1.serialize();
    const auto b2 = enc.description2.serialize();
    write_bytes(o.output + ".1", b1);
    write_bytes(o.output + ".2", b2);
    extra["outputs"] = {describe_file(o.output + ".1", b1), describe_file(o.output + ".2", b2)};
    rep["results"]["md"] = extra;
  }
  if (o.common.timing) rep["timing"] = {{"seconds", elapsed(t0)}};
  emit(rep, o.common);
  return kExitOk;
}

// ---- decode ----

struct DecodeOptions {
  Common common;
  std::string mode, input, second, output, side;
  int stage = 2;
};

int cmd_decode(const DecodeOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const Format fmt = parse_format(o.common.format);
  const auto bytes = read_bytes(o.input);
  const Mode found = peek_mode(bytes);
  if (!o.mode.empty() && mode_from_cli(o.mode) != found) {
    fail(ErrorCode::kModeMismatch, "expected a " + o.mode + " stream, found " + cli_mode_name(found));
  }
  json rep = new_report("decode");
  rep["inputs"]["input"] = describe_file(o.input, bytes);
  rep["parameters"] = {{"mode", cli_mode_name(found)}};
  json outputs = json::object();
  auto put = [&](const std::string& key, const std::string& path, const Sequence& s) {
    write_file(path, render_sequence(s, fmt));
    outputs[key] = {{"path", path}, {"n", s.size()}, {"checksum", hex64(checksum(s))}};
  };

  if (found == Mode::kLz) {
    const LzDecodeResult r = lz_decode_detailed(Bitstream::deserialize(bytes));
    put("sequence", o.output, r.sequence);
    rep["results"]["payload_bits"] = r.payload_bits;
  } else if (found == Mode::kCond) {
    if (o.side.empty()) fail(ErrorCode::kInvalidArgument, "cond streams need --side");
    const Loaded side = load_sequence(o.side, fmt);
    rep["inputs"]["side"] = describe(side);
    const CondDecodeResult r = cond_decode_detailed(Bitstream::deserialize(bytes), side.seq);
    put("sequence", o.output, r.sequence);
    rep["results"]["payload_bits"] = r.payload_bits;
  } else if (found == Mode::kSr) {
    if (o.stage != 1 && o.stage != 2) fail(ErrorCode::kInvalidArgument, "--stage must be 1 or 2");
    const SrEncoded e = SrEncoded::from_container(Container::deserialize(bytes));
    rep["parameters"]["stage"] = o.stage;
    if (o.stage == 1) {
      put("hat", o.output + ".hat", sr_decode_stage1(e));
    } else {
      const auto [hat, tilde] = sr_decode_full(e);
      put("hat", o.output + ".hat", hat);
      put("tilde", o.output + ".tilde", tilde);
    }
  } else {
    const Container d = Container::deserialize(bytes);
    if (o.second.empty()) {
      const MdDecoded r = md_decode_side(d);
      rep["parameters"]["decoder"] = d.description;
      if (d.description == 1) {
        put("hat", o.output + ".hat", r.primary);
      } else {
        put("tilde", o.output + ".tilde", r.secondary);
      }
      if (r.aux) put("u", o.output + ".u", *r.aux);
    } else {
      const auto bytes2 = read_bytes(o.second);
      rep["inputs"]["second"] = describe_file(o.second, bytes2);
      Container d2 = Container::deserialize(bytes2);
      const bool swapped = d.description == 2;
      const MdDecoded r = swapped ? md_decode_central(d2, d) : md_decode_central(d, d2);
      rep["parameters"]["decoder"] = 0;
      put("hat", o.output + ".hat", r.primary);
      put("tilde", o.output + ".tilde", r.secondary);
      put("central", o.output + ".central", r.central);
      if (r.aux) put("u", o.output + ".u", *r.aux);
    }
  }
  rep["results"]["outputs"] = outputs;
  if (o.common.timing) rep["timing"] = {{"seconds", elapsed(t0)}};
  emit(rep, o.common);
  return kExitOk;
}

// ---- verify ----

struct VerifyOptions {
  Common common;
  std::string suite;
  std::optional<std::uint64_t> n, budget;
  std::uint64_t beta = 2;
  std::optional<std::uint64_t> gamma;
  std::uint64_t q = 1;
  std::uint64_t seed = 1;
  std::uint64_t max_len = 2;
  std::uint64_t samples = 200;
  std::uint64_t members = 20;
  std::vector<std::uint64_t> block_lens;
};

int cmd_verify(const VerifyOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const EpsSpec eps = eps_from(o.common);
  json rep = new_report("verify");
  json params = {{"suite", o.suite}, {"seed", o.seed}, {"eps_mode", eps.name()}};
  SuiteResult res;
  if (o.suite == "entropy-ineq") {
    EntropySuiteConfig c;
    c.n = o.n.value_or(16);
    c.beta = o.beta;
    c.gamma = o.gamma.value_or(0);
    c.block_lens = o.block_lens;
    c.eps = eps;
    c.budget = o.budget.value_or(c.budget);
    params.update({{"n", c.n}, {"beta", c.beta}, {"gamma", c.gamma}, {"budget", c.budget}, {"block_lens", c.block_lens}});
    res = verify_entropy_inequality(c);
  } else if (o.suite == "kraft") {
    KraftSuiteConfig c;
    c.beta = o.beta;
    c.gamma = o.gamma.value_or(2);
    c.max_len = o.max_len;
    if (!o.block_lens.empty()) c.max_block_len = *std::max_element(o.block_lens.begin(), o.block_lens.end());
    // Budget caps the number of enumerated encoders.
    const std::uint64_t budget = o.budget.value_or(1'000'000);
    const std::uint64_t words = (std::uint64_t{2} << c.max_len) - 1;
    detail::checked_power(words, c.beta + c.beta * c.gamma, budget);
    params.update({{"beta", c.beta}, {"gamma", c.gamma}, {"max_len", c.max_len},
                   {"max_block_len", c.max_block_len}, {"budget", budget}});
    res = verify_kraft(c);
  } else if (o.suite == "converse") {
    ConverseSuiteConfig c;
    c.n = o.n.value_or(8);
    c.beta = o.beta;
    c.gamma = o.gamma.value_or(2);
    c.max_len = o.max_len;
    c.q = o.q;
    c.budget = o.budget.value_or(c.budget);
    c.samples = o.samples;
    c.seed = o.seed;
    c.eps = eps;
    const std::uint64_t words = (std::uint64_t{2} << c.max_len) - 1;
    detail::checked_power(words, c.beta + c.beta * c.gamma, 1'000'000);
    params.update({{"n", c.n}, {"beta", c.beta}, {"gamma", c.gamma}, {"max_len", c.max_len}, {"q", c.q},
                   {"budget", c.budget}, {"samples", c.samples}});
    res = verify_converse(c);
  } else if (o.suite == "frontier") {
    FrontierSuiteConfig c;
    c.unions = o.budget.value_or(100);
    c.max_members = o.members;
    c.seed = o.seed;
    params.update({{"unions", c.unions}, {"max_members", c.max_members}, {"resolution", c.resolution}});
    res = verify_frontier(c);
  } else if (o.suite == "split-lemma") {
    SplitSuiteConfig c;
    c.trials = o.budget.value_or(100000);
    c.seed = o.seed;
    params.update({{"trials", c.trials}});
    res = verify_split_lemma(c);
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown suite '" + o.suite + "'");
  }
  rep["parameters"] = params;
  rep["results"] = suite_json(res);
  if (o.common.timing) rep["timing"] = {{"seconds", elapsed(t0)}};
  emit(rep, o.common);
  std::cerr << res.suite << ": " << res.passed << "/" << res.checked << " pass\n";
  return res.ok() ? kExitOk : kExitViolation;
}

// ---- region ----

struct RegionOptions {
  Common common;
  DistortionOptions dist;
  std::string input, hat, tilde, csv;
  std::uint64_t q = 1;
  std::uint64_t blockwise = 0;
};

std::string frontier_csv(const std::vector<RatePoint>& pts) {
  std::string out = "r1,r2\n";
  char buf[64];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.r1, p.r2);
    out += buf;
  }
  return out;
}

int cmd_region(const RegionOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const EpsSpec eps = eps_from(o.common);
  const BoundConfig cfg{o.q, eps};
  const Format fmt = parse_format(o.common.format);
  json rep = new_report("region");
  rep["parameters"] = {{"q", o.q}, {"eps_mode", eps.name()}};
  std::vector<RatePoint> pts;
  if (o.blockwise > 0) {
    if (o.hat.empty() || o.tilde.empty()) fail(ErrorCode::kInvalidArgument, "--blockwise needs --hat and --tilde");
    const Loaded hat = load_sequence(o.hat, fmt), tilde = load_sequence(o.tilde, fmt);
    rep["inputs"]["hat"] = describe(hat);
    rep["inputs"]["tilde"] = describe(tilde);
    rep["parameters"]["k"] = o.blockwise;
    const HalfPlaneRegion outer = blockwise_region(hat.seq, tilde.seq, o.blockwise, BlockSide::kOuterMinus, cfg);
    const HalfPlaneRegion inner = blockwise_region(hat.seq, tilde.seq, o.blockwise, BlockSide::kInnerPlus, cfg);
    rep["results"] = {{"outer_minus", region_json(outer)}, {"inner_plus", region_json(inner)},
                      {"inner_within_outer", detail::region_within(inner, outer)}};
    pts = frontier(std::vector<HalfPlaneRegion>{inner});
    rep["results"]["frontier"] = points_json(pts);
  } else {
    if (o.input.empty()) fail(ErrorCode::kInvalidArgument, "region needs an input sequence");
    const Loaded x = load_sequence(o.input, fmt);
    rep["inputs"]["input"] = describe(x);
    rep["parameters"]["search"] = distortion_params(o.dist);
    const RegionUnion u = sr_outer_region(x.seq, sr_spec(o.dist), cfg, strategy_from(o.dist));
    json members = json::array();
    for (const auto& m : u.members) members.push_back(region_json(m.region));
    pts = u.frontier;
    rep["results"] = {{"members", members}, {"frontier", points_json(pts)}, {"exhaustive", u.exhaustive},
                      {"evaluated", u.evaluated}, {"strategy", mode_name(u.strategy.mode)}};
  }
  if (!o.csv.empty()) {
    write_file(o.csv, frontier_csv(pts));
    rep["results"]["csv"] = o.csv;
  }
  if (o.common.timing) rep["timing"] = {{"seconds", elapsed(t0)}};
  emit(rep, o.common);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successive-refinement and multiple-description LZ coding of individual sequences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "srlz 1.0.0");

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "Complexities, block entropies and bounds of a sequence");
  add_common(analyze, ao.common);
  analyze->add_option("input", ao.input, "Sequence file")->required();
  analyze->add_option("--side", ao.side, "Side-information sequence (conditioning)");
  analyze->add_option("--block-len,-l", ao.block_len, "Block length l for the entropy inequalities");
  analyze->add_option("--q", ao.q, "State budget q");
  analyze->add_option("--fsm", ao.fsm, "FSM table: run the converse check on (side, input)");
  analyze->add_flag("--phrases", ao.phrases, "List the LZ78 phrases");

  EncodeOptions eo;
  auto* encode = app.add_subcommand("encode", "Encode a sequence (lz, cond, sr, md-egc, md-zb)");
  add_common(encode, eo.common);
  add_distortion(encode, eo.dist);
  encode->add_option("--mode,-m", eo.mode, "lz, cond, sr, md-egc or md-zb")
      ->required()
      ->check(CLI::IsMember({"lz", "cond", "sr", "md-egc", "md-zb"}));
  encode->add_option("input", eo.input, "Source sequence");
  encode->add_option("--output,-o", eo.output, "Output file (MD writes <out>.1 and <out>.2)")->required();
  encode->add_option("--side", eo.side, "Side information for cond");
  encode->add_option("--hat", eo.hat, "Explicit stage-1 / description-1 reproduction");
  encode->add_option("--tilde", eo.tilde, "Explicit stage-2 / description-2 reproduction");
  encode->add_option("--central", eo.central, "Explicit central reproduction (MD)");
  encode->add_option("--u-file", eo.u_file, "Auxiliary sequence for md-zb");
  encode->add_option("--split", eo.split, "Fraction of the refinement stream sent with description 1 (md-egc)");
  encode->add_option("--alpha", eo.alpha, "Fraction of the refinement stream sent with description 1 (md-zb)");
  encode->add_option("--q", eo.q, "State budget q for the reported floors");

  DecodeOptions dO;
  auto* decode = app.add_subcommand("decode", "Decode a stream or container");
  add_common(decode, dO.common);
  decode->add_option("input", dO.input, "Encoded file")->required();
  decode->add_option("--output,-o", dO.output, "Output file or prefix")->required();
  decode->add_option("--mode,-m", dO.mode, "Expected mode")
      ->check(CLI::IsMember({"lz", "cond", "sr", "md-egc", "md-zb"}));
  decode->add_option("--side", dO.side, "Side information for cond streams");
  decode->add_option("--stage", dO.stage, "SR: decode stage 1 only or both stages");
  decode->add_option("--second", dO.second, "MD: the other description (central decoder)");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  add_common(verify, vo.common);
  verify->add_option("suite", vo.suite, "entropy-ineq, kraft, converse, frontier or split-lemma")
      ->required()
      ->check(CLI::IsMember({"entropy-ineq", "kraft", "converse", "frontier", "split-lemma"}));
  verify->add_option("--n", vo.n, "Sequence length");
  verify->add_option("--beta", vo.beta, "Primary alphabet size");
  verify->add_option("--gamma", vo.gamma, "Secondary alphabet size (entropy-ineq: conditional version)");
  verify->add_option("--q", vo.q, "State budget q");
  verify->add_option("--budget", vo.budget, "Enumeration budget, trial count or union count");
  verify->add_option("--seed", vo.seed, "Seed for randomized suites");
  verify->add_option("--max-len", vo.max_len, "Longest output word of the enumerated encoders");
  verify->add_option("--samples", vo.samples, "Random pairs when exhaustive enumeration exceeds the budget");
  verify->add_option("--members", vo.members, "Largest union size (frontier)");
  verify->add_option("--block-len,-l", vo.block_lens, "Block lengths (entropy-ineq) or the largest one (kraft)");

  RegionOptions ro;
  auto* region = app.add_subcommand("region", "Outer rate region and its staircase frontier");
  add_common(region, ro.common);
  add_distortion(region, ro.dist);
  region->add_option("input", ro.input, "Source sequence");
  region->add_option("--q", ro.q, "State budget q");
  region->add_option("--csv", ro.csv, "Write the frontier as r1,r2 CSV");
  region->add_option("--blockwise", ro.blockwise, "Blockwise regions with block length k for (--hat, --tilde)");
  region->add_option("--hat", ro.hat, "Stage-1 reproduction (blockwise)");
  region->add_option("--tilde", ro.tilde, "Stage-2 reproduction (blockwise)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(ao);
    if (*encode) return cmd_encode(eo);
    if (*decode) return cmd_decode(dO);
    if (*verify) return cmd_verify(vo);
    if (*region) return cmd_region(ro);
  } catch (const Error& e) {
    std::cerr << "srlz: error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    std::cerr << "srlz: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "srlz: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
