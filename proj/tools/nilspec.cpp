// Command-line front end. Exit codes: 0 all checks pass, 1 a check failed or
// an invariant broke, 2 bad input, 3 a size or search limit was hit.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nilspec.hpp"

namespace {

using nilspec::Elem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;

struct Globals {
  bool json = false;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_size;
  std::string dot_path;
};

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw nilspec::SpecError("cannot write " + path);
  out << text;
}

std::vector<std::string> ideal_strings(const std::vector<nilspec::Ideal>& xs) {
  std::vector<std::string> out;
  for (const auto& i : xs) out.push_back(i.to_string());
  return out;
}

std::vector<std::string> prime_strings(const nilspec::Spectrum& xs) {
  std::vector<std::string> out;
  for (const auto& p : xs) out.push_back(p.to_string());
  return out;
}

void print_list(std::ostream& os, const std::string& head, const std::vector<std::string>& items) {
  os << head << ' ' << items.size() << '\n';
  for (const auto& s : items) os << "  " << s << '\n';
}

std::string identity_string(const nilspec::FiniteRng& r) { return r.identity() ? r.name(*r.identity()) : "none"; }

int cmd_spectrum(const Globals& g, const std::string& spec_arg) {
  const nilspec::ParsedSpec parsed = nilspec::load_ring_spec(spec_arg);
  const nilspec::RngPtr& r = parsed.ring;
  const auto ideals = nilspec::enumerate_ideals(r);
  const nilspec::SpecSpace sp = nilspec::spec_space(r);
  const nilspec::Ideal nil = nilspec::nilradical(r, sp.primes);
  if (g.json) {
    json j{{"ring", r->label()},           {"size", r->size()},
           {"identity", identity_string(*r)}, {"ideals", ideal_strings(ideals)},
           {"primes", prime_strings(sp.primes)}, {"nilradical", nil.to_string()}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "ring " << r->label() << " size=" << r->size() << " identity=" << identity_string(*r) << '\n';
    print_list(std::cout, "ideals", ideal_strings(ideals));
    print_list(std::cout, "primes", prime_strings(sp.primes));
    std::cout << "nilradical " << nil.to_string() << '\n';
  }
  if (!g.dot_path.empty()) write_text(g.dot_path, nilspec::to_dot(sp.space, "spec"));
  return kExitOk;
}

int report_nilcomp(const Globals& g, const nilspec::IExtension& ext) {
  if (!ext.e_object()) {
    throw nilspec::SpecError("ambient ring " + ext.amb()->label() + " has no identity, so the pair is not an E-object");
  }
  const nilspec::NilcompResult nc = nilspec::assemble_nilcomp(ext);
  const nilspec::Report rep = nilspec::nilcomp_checks(nc);
  std::vector<std::pair<std::string, std::string>> lambda;
  for (std::size_t p = 0; p < nc.sub_spec.primes.size(); ++p) {
    lambda.emplace_back(nc.sub_spec.primes[p].to_string(), nc.nc.primes[nc.lambda(p)].to_string());
  }
  if (g.json) {
    json lam = json::array();
    for (const auto& [p, q] : lambda) lam.push_back({{"prime", p}, {"image", q}});
    json j{{"extension", ext.label()},
           {"spec_s", prime_strings(nc.sub_spec.primes)},
           {"nilradical_s", nc.nil_sub.to_string()},
           {"psi_nil", nc.psi_nil.to_string()},
           {"q", {{"ring", nc.q.ring->label()}, {"size", nc.q.ring->size()}}},
           {"nc", prime_strings(nc.nc.primes)},
           {"lambda", lam},
           {"lambda_bijective", nc.lambda.injective() && nc.lambda.surjective()},
           {"checks", rep.json()}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "extension " << ext.label() << '\n';
    print_list(std::cout, "spec_s", prime_strings(nc.sub_spec.primes));
    std::cout << "nilradical_s " << nc.nil_sub.to_string() << '\n';
    std::cout << "psi_nil " << nc.psi_nil.to_string() << '\n';
    std::cout << "q " << nc.q.ring->label() << " size=" << nc.q.ring->size() << '\n';
    print_list(std::cout, "nc", prime_strings(nc.nc.primes));
    std::cout << "lambda " << lambda.size() << (nc.lambda.injective() && nc.lambda.surjective() ? " bijective" : "")
              << '\n';
    for (const auto& [p, q] : lambda) std::cout << "  " << p << " -> " << q << '\n';
    std::cout << rep.text();
  }
  if (!g.dot_path.empty()) write_text(g.dot_path, nilspec::to_dot(nc.nc.space, "nc"));
  return rep.all_pass() ? kExitOk : kExitFail;
}

nilspec::IExtension extension_of(const nilspec::ParsedSpec& parsed) {
  if (!parsed.ext) throw nilspec::SpecError("nc needs an ideal_subrng or unitization spec naming S inside R");
  return *parsed.ext;
}

int cmd_nc(const Globals& g, const std::string& spec_arg) {
  return report_nilcomp(g, extension_of(nilspec::load_ring_spec(spec_arg)));
}

int cmd_nc0(const Globals& g, const std::string& spec_arg) {
  return report_nilcomp(g, nilspec::canonical_extension(nilspec::load_ring_spec(spec_arg).ring));
}

int cmd_export_dot(const std::string& spec_arg, const std::string& what, const std::string& path) {
  const nilspec::ParsedSpec parsed = nilspec::load_ring_spec(spec_arg);
  std::string dot;
  if (what == "spectrum") {
    dot = nilspec::to_dot(nilspec::spec_space(parsed.ring).space, "spec");
  } else if (what == "nc") {
    dot = nilspec::to_dot(nilspec::assemble_nilcomp(extension_of(parsed)).nc.space, "nc");
  } else {
    dot = nilspec::to_dot(nilspec::assemble_nilcomp(nilspec::canonical_extension(parsed.ring)).nc.space, "nc0");
  }
  write_text(path, dot);
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& corpus_path, bool mutate) {
  const auto start = std::chrono::steady_clock::now();
  nilspec::Corpus corpus = corpus_path.empty() ? nilspec::default_corpus() : nilspec::load_corpus(corpus_path);
  nilspec::VerifyOptions opts;
  opts.seed = g.seed;
  opts.mutate = mutate;
  const nilspec::VerifyResult res = nilspec::verify(std::move(corpus), opts);
  if (g.json) {
    json j{{"checks", res.report.json()},
           {"summary",
            {{"checks", res.report.size()},
             {"pass", res.report.passed()},
             {"fail", res.report.failed()},
             {"skipped", res.skipped.size()},
             {"seed", g.seed}}},
           {"skipped", res.skipped}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << res.report.text();
    for (const auto& s : res.skipped) std::cout << "SKIP " << s << '\n';
    std::cout << res.summary(g.seed);
  }
  // Wall time would break byte-identical reports, so it goes to stderr.
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "wall_time_s " << secs << '\n';
  return res.report.all_pass() ? kExitOk : kExitFail;
}

std::vector<nilspec::boolean::FinSet> parse_cover(const std::string& text) {
  std::vector<nilspec::boolean::FinSet> cover;
  if (text.empty()) return cover;
  std::stringstream sets(text);
  std::string part;
  while (std::getline(sets, part, ';')) {
    std::vector<std::uint64_t> xs;
    std::stringstream items(part);
    std::string item;
    while (std::getline(items, item, ',')) {
      if (item.empty()) continue;
      try {
        std::size_t used = 0;
        xs.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw nilspec::SpecError("cover: '" + item + "' is not a natural number");
      }
    }
    cover.emplace_back(std::move(xs));
  }
  return cover;
}

int cmd_boolean_demo(const Globals& g, const std::vector<std::string>& cover_args) {
  namespace b = nilspec::boolean;
  std::mt19937_64 rng(g.seed);
  std::vector<b::FinSet> cover;
  for (const std::string& arg : cover_args) {
    for (b::FinSet& x : parse_cover(arg)) cover.push_back(std::move(x));
  }
  if (cover_args.empty()) cover = {b::FinSet{0}, b::FinSet{1}};

  json samples = json::array();
  std::ostringstream text;
  text << "psi(0) in U0(B) = {0} x 2Z\n";
  std::uniform_int_distribution<int> alpha(-10, 10);
  std::vector<b::UPair> probes{{b::FinSet{}, 4}, {b::FinSet{1}, 0}, {b::FinSet{}, 3}};
  for (int i = 0; i < 5; ++i) probes.push_back({b::random_subset(rng, 8), b::Integer(alpha(rng))});
  for (const b::UPair& p : probes) {
    const b::Psi0Verdict v = b::psi0_decide(p);
    const std::string w = v.witness ? v.witness->to_string() : "";
    text << "  " << p.to_string() << (v.member ? " member" : " nonmember witness x=" + w);
    if (v.witness) text << " residue=" << b::annihilation_residue(p, *v.witness).to_string();
    text << '\n';
    json s{{"pair", p.to_string()}, {"member", v.member}};
    if (v.witness) s["witness"] = w;
    samples.push_back(s);
  }

  const std::uint64_t n = b::noncompactness_witness(cover);
  std::string cover_str;
  for (std::size_t i = 0; i < cover.size(); ++i) cover_str += (i ? " " : "") + std::string("D(") + cover[i].to_string() + ")";
  text << "noncompact: P_" << n << " avoids " << (cover.empty() ? "the empty cover" : cover_str) << '\n';

  b::InfinityCertificate cert = b::infinity_point_count(rng);
  text << "infinity: U0(B)/(Bx2Z) has " << cert.quotient_size << " elements, " << cert.primes
       << " prime, so 1 point at infinity\n";
  text << cert.report.text();

  if (g.json) {
    json j{{"psi0", samples},
           {"noncompact", {{"cover", cover_str}, {"witness", n}}},
           {"infinity", {{"quotient_size", cert.quotient_size}, {"primes", cert.primes}, {"checks", cert.report.json()}}}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text.str();
  }
  return cert.report.all_pass() ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime spectra and nilcompactifications of finite commutative rings"};
  app.require_subcommand(1);
  Globals g;
  std::size_t max_size = 0;
  app.add_flag("--json", g.json, "Print JSON instead of text");
  app.add_option("--seed", g.seed, "Seed for randomized checks")->capture_default_str();
  auto* max_opt = app.add_option("--max-size", max_size, "Largest ring the constructors may build")
                      ->envname("NILSPEC_MAX_SIZE");
  app.fallthrough();

  std::string spec_arg;
  std::string corpus_path;
  std::string what = "spectrum";
  std::string out_path;
  std::vector<std::string> cover;
  bool mutate = false;

  auto* spectrum = app.add_subcommand("spectrum", "Ideals, primes and nilradical of a ring");
  spectrum->add_option("spec", spec_arg, "Ring spec: inline JSON or a file")->required();
  spectrum->add_option("--dot", g.dot_path, "Also write the spectrum as DOT");

  auto* nc = app.add_subcommand("nc", "Nilcompactification of S inside R");
  nc->add_option("spec", spec_arg, "ideal_subrng or unitization spec")->required();
  nc->add_option("--dot", g.dot_path, "Also write NC as DOT");

  auto* nc0 = app.add_subcommand("nc0", "Canonical nilcompactification of S via its unitization");
  nc0->add_option("spec", spec_arg, "Ring spec for S")->required();
  nc0->add_option("--dot", g.dot_path, "Also write NC0 as DOT");

  auto* verify = app.add_subcommand("verify", "Run the property suite");
  verify->add_option("--corpus", corpus_path, "JSON spec or array of specs replacing the default corpus");
  verify->add_flag("--mutate", mutate, "Corrupt one multiplication entry of a corpus ring");

  auto* dot = app.add_subcommand("export-dot", "Write a spectrum, NC or NC0 as DOT");
  dot->add_option("spec", spec_arg, "Ring spec")->required();
  dot->add_option("path", out_path, "Output file, or - for stdout")->required();
  dot->add_option("--of", what, "spectrum, nc or nc0")
      ->check(CLI::IsMember({"spectrum", "nc", "nc0"}))
      ->capture_default_str();

  auto* demo = app.add_subcommand("boolean-demo", "Certificates for the Boolean rng of finite subsets of N");
  demo->add_option("--cover", cover, "Cover sets separated by ';' (\"0,1;3\"), or one set per --cover")
      ->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*max_opt) nilspec::set_max_ring_size(max_size);
    if (*spectrum) return cmd_spectrum(g, spec_arg);
    if (*nc) return cmd_nc(g, spec_arg);
    if (*nc0) return cmd_nc0(g, spec_arg);
    if (*verify) return cmd_verify(g, corpus_path, mutate);
    if (*dot) return cmd_export_dot(spec_arg, what, out_path);
    if (*demo) return cmd_boolean_demo(g, cover);
  } catch (const nilspec::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nilspec::LimitError& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return kExitLimit;
  } catch (const nilspec::Error& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitInput;
}
