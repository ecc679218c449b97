#include "plr/bench.hpp"
#include "plr/engine.hpp"
#include "plr/generate.hpp"
#include "plr/ibq.hpp"
#include "plr/intervals.hpp"
#include "plr/io.hpp"
#include "plr/normalize.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace plr;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct Inputs {
  std::string kb;
  std::string ontology;
  bool json = false;
};

KnowledgeBase load_kb(const std::string &path) { return path.empty() ? KnowledgeBase{} : parse_kb(read_file(path)); }

std::optional<ExternalOntology> load_ontology(const std::string &path) {
  if (path.empty())
    return std::nullopt;
  return parse_ontology(read_file(path));
}

std::string emit_policy(const FullConcept &c, bool json, const std::string &id = "") {
  PolicyDocument doc{c, id, ""};
  return json ? serialize_policy_json(doc) : serialize_policy(doc);
}

std::string emit_kb(const KnowledgeBase &kb, bool json) { return json ? serialize_kb_json(kb) : serialize_kb(kb); }

std::string emit_ontology(const ExternalOntology &o, bool json) {
  return json ? serialize_ontology_json(o) : serialize_ontology(o);
}

void output(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

int run_check(const Inputs &in, const std::string &lhsPath, const std::string &rhsPath, bool compileMode,
              const std::string &opt, const std::string &splitter) {
  KnowledgeBase kb = load_kb(in.kb);
  auto onto = load_ontology(in.ontology);
  FullConcept lhs = parse_policy(read_file(lhsPath));
  FullConcept rhs = parse_policy(read_file(rhsPath));
  EngineOptions eo = EngineOptions::preset(opt, parse_splitter(splitter));

  bool answer;
  if (onto && compileMode) {
    auto compiled = compile_with_policies(kb, *onto, {lhs}, eo.rule5);
    Engine engine(compiled.kb, eo);
    if (eo.preNormalized)
      prenormalize(engine, compiled.policies, std::vector<FullConcept>{rhs});
    answer = plr::plr(engine, compiled.policies[0], rhs);
  } else if (onto) {
    Engine engine(kb, *onto, eo);
    if (eo.preNormalized)
      prenormalize(engine, {lhs}, std::vector<FullConcept>{rhs});
    answer = plr_oracle(engine, lhs, rhs);
  } else {
    Engine engine(kb, eo);
    if (eo.preNormalized)
      prenormalize(engine, {lhs}, std::vector<FullConcept>{rhs});
    answer = plr::plr(engine, lhs, rhs);
  }
  std::cout << (answer ? "SUBSUMED" : "NOT-SUBSUMED") << "\n";
  return answer ? kExitYes : kExitNo;
}

int run_validate(const Inputs &in, const std::string &policyPath) {
  KnowledgeBase kb = load_kb(in.kb);
  auto onto = load_ontology(in.ontology);
  FullConcept policy = parse_policy(read_file(policyPath));
  std::unique_ptr<Engine> engine = onto ? std::make_unique<Engine>(kb, *onto) : std::make_unique<Engine>(kb);
  FullConcept n = engine->normalized(policy);
  bool any = false;
  for (std::size_t i = 0; i < n.size(); ++i) {
    bool sat = !n[i].bottom;
    any = any || sat;
    std::cout << "disjunct " << (i + 1) << ": " << (sat ? "SATISFIABLE" : "UNSATISFIABLE") << "\n";
  }
  std::cout << (any ? "SATISFIABLE" : "UNSATISFIABLE") << "\n";
  return any ? kExitYes : kExitNo;
}

int run_normalize(const Inputs &in, const std::string &policyPath, const std::string &out) {
  KnowledgeBase kb = load_kb(in.kb);
  auto onto = load_ontology(in.ontology);
  PolicyDocument doc = parse_policy_document(read_file(policyPath));
  std::unique_ptr<Engine> engine = onto ? std::make_unique<Engine>(kb, *onto) : std::make_unique<Engine>(kb);
  output(out, emit_policy(engine->normalized(doc.policy), in.json, doc.id));
  return kExitYes;
}

int run_split(const Inputs &in, const std::string &lhsPath, const std::string &rhsPath, const std::string &splitter,
              const std::string &out) {
  PolicyDocument lhs = parse_policy_document(read_file(lhsPath));
  FullConcept rhs = parse_policy(read_file(rhsPath));
  FullConcept c = lhs.policy;
  if (!in.kb.empty()) {
    Engine engine(load_kb(in.kb));
    c = engine.normalized(c);
  }
  output(out, emit_policy(split(c, rhs, parse_splitter(splitter)), in.json, lhs.id));
  return kExitYes;
}

int run_compile(const Inputs &in, const std::vector<std::string> &policies, const std::string &outDir,
                const std::string &out) {
  KnowledgeBase kb = load_kb(in.kb);
  auto onto = load_ontology(in.ontology);
  if (!onto)
    throw PreconditionError("compile needs --ontology");
  if (policies.empty()) {
    output(out, emit_kb(compile(kb, *onto), in.json));
    return kExitYes;
  }
  std::vector<PolicyDocument> docs;
  std::vector<FullConcept> bp;
  for (const auto &p : policies) {
    docs.push_back(parse_policy_document(read_file(p)));
    bp.push_back(docs.back().policy);
  }
  auto compiled = compile_with_policies(kb, *onto, bp);
  output(out, emit_kb(compiled.kb, in.json));
  if (!outDir.empty()) {
    std::filesystem::create_directories(outDir);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      std::string name = std::filesystem::path(policies[i]).filename().string();
      write_file((std::filesystem::path(outDir) / name).string(),
                 emit_policy(compiled.policies[i], in.json, docs[i].id));
    }
  }
  return kExitYes;
}

int run_single_atom(const Inputs &in, const std::vector<std::string> &policies, const std::string &outDir,
                    const std::string &out) {
  std::vector<PolicyDocument> docs;
  std::vector<FullConcept> bp;
  for (const auto &p : policies) {
    docs.push_back(parse_policy_document(read_file(p)));
    bp.push_back(docs.back().policy);
  }
  std::set<std::string> reserved;
  if (!in.kb.empty()) {
    auto sig = load_kb(in.kb).signature();
    reserved.insert(sig.concepts.begin(), sig.concepts.end());
  }
  if (auto onto = load_ontology(in.ontology)) {
    auto sig = onto->signature();
    reserved.insert(sig.concepts.begin(), sig.concepts.end());
    reserved.insert(sig.roles.begin(), sig.roles.end());
  }
  auto res = single_atom_transform(bp, reserved);
  output(out, emit_ontology(res.definitions, in.json));
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::string text = emit_policy(res.policies[i], in.json, docs[i].id);
    if (outDir.empty()) {
      std::cout << text;
    } else {
      std::filesystem::create_directories(outDir);
      write_file((std::filesystem::path(outDir) / std::filesystem::path(policies[i]).filename()).string(), text);
    }
  }
  return kExitYes;
}

struct GenArgs {
  std::string profile;
  std::string policies = "P1";
  std::uint64_t seed = 1;
  std::string out;
  std::size_t count = 100;
  std::size_t queriesPerBusiness = 0;
  std::size_t stratify = 0;
  std::size_t perBucket = 10;
  std::size_t consents = 10;
};

int run_gen(const GenArgs &g) {
  Corpus corpus = [&] {
    if (g.profile == "pxs" || g.profile == "tr")
      return gen_pilot_corpus(PilotProfile::preset(g.profile, g.seed));
    auto vocab = gen_ontology_detailed(OntologyProfile::preset(g.profile, g.seed));
    auto pp = PolicyProfile::preset(g.policies, g.seed);
    Corpus c = g.stratify > 0 ? gen_ni_family(vocab, pp, g.stratify, g.perBucket, g.consents)
                              : gen_policies(vocab, pp, g.count, 0.3, g.queriesPerBusiness);
    c.profile = g.profile;
    return c;
  }();
  write_corpus(corpus, g.out);
  std::cout << "wrote " << corpus.policies.size() << " policies and " << corpus.queries.size() << " queries to "
            << g.out << "\n";
  return kExitYes;
}

struct BenchArgs {
  std::string corpus;
  std::string opt = "plain";
  std::string splitter = "naive";
  std::size_t repeat = 3;
  std::string out;
  std::string summary;
  double timeoutMs = 10000;
  std::size_t limit = 0;
  std::size_t warmup = 50;
  std::size_t maxPieces = 100000;
};

int run_bench_cmd(const BenchArgs &b) {
  Corpus corpus = read_corpus(b.corpus);
  BenchOptions bo;
  bo.variants = split_list(b.opt);
  bo.splitter = parse_splitter(b.splitter);
  bo.repeat = b.repeat;
  bo.timeout = std::chrono::nanoseconds(static_cast<std::int64_t>(b.timeoutMs * 1e6));
  bo.limit = b.limit;
  bo.warmup = b.warmup;
  bo.maxSplitPieces = b.maxPieces;
  BenchReport report = run_bench(corpus, bo);
  output(b.out, report.csv());
  std::string text = report.summary_text();
  if (b.summary.empty())
    std::cerr << text;
  else
    write_file(b.summary, text);
  return kExitYes;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Policy subsumption checker"};
  app.require_subcommand(1);

  Inputs in;
  auto addKb = [&](CLI::App *s, bool ontology) {
    s->add_option("--kb", in.kb, "knowledge base file")->check(CLI::ExistingFile);
    if (ontology)
      s->add_option("--ontology", in.ontology, "external ontology file")->check(CLI::ExistingFile);
    s->add_flag("--json", in.json, "emit JSON instead of the text syntax");
  };

  std::string lhs, rhs, policy, opt = "plain", splitter = "naive", out, outDir;
  std::vector<std::string> policies;
  bool compileMode = false;

  auto *check = app.add_subcommand("check", "decide lhs ⊑ rhs");
  addKb(check, true);
  check->add_option("--lhs", lhs)->required()->check(CLI::ExistingFile);
  check->add_option("--rhs", rhs)->required()->check(CLI::ExistingFile);
  check->add_flag("--compile", compileMode, "answer through the compiled knowledge base");
  check->add_option("--opt", opt)->check(CLI::IsMember({"plain", "c", "2n", "c2n", "pre", "pre2n"}));
  check->add_option("--splitter", splitter)->check(CLI::IsMember({"naive", "refined"}));

  auto *validate = app.add_subcommand("validate", "satisfiability per disjunct");
  addKb(validate, true);
  validate->add_option("--policy", policy)->required()->check(CLI::ExistingFile);

  auto *normalize = app.add_subcommand("normalize", "emit the normalized policy");
  addKb(normalize, true);
  normalize->add_option("--policy", policy)->required()->check(CLI::ExistingFile);
  normalize->add_option("--out", out);

  auto *splitCmd = app.add_subcommand("split", "emit lhs split against rhs endpoints");
  addKb(splitCmd, false);
  splitCmd->add_option("--lhs", lhs)->required()->check(CLI::ExistingFile);
  splitCmd->add_option("--rhs", rhs)->required()->check(CLI::ExistingFile);
  splitCmd->add_option("--splitter", splitter)->check(CLI::IsMember({"naive", "refined"}));
  splitCmd->add_option("--out", out);

  auto *compileCmd = app.add_subcommand("compile", "emit the knowledge base replacing the ontology");
  addKb(compileCmd, true);
  compileCmd->add_option("--policy", policies, "business policies to prepare")->check(CLI::ExistingFile);
  compileCmd->add_option("--out-dir", outDir, "where to write the prepared policies");
  compileCmd->add_option("--out", out);

  auto *singleAtom = app.add_subcommand("single-atom", "replace name conjunctions by defined names");
  addKb(singleAtom, true);
  singleAtom->add_option("--policy", policies)->required()->check(CLI::ExistingFile);
  singleAtom->add_option("--out-dir", outDir);
  singleAtom->add_option("--out", out, "definitions output");

  GenArgs gen;
  auto *genCmd = app.add_subcommand("gen", "generate a benchmark corpus");
  genCmd->add_option("--profile", gen.profile)->required()->check(CLI::IsMember({"pxs", "tr", "O1", "O2", "O3"}));
  genCmd->add_option("--policies", gen.policies)->check(CLI::IsMember({"P1", "P2"}));
  genCmd->add_option("--seed", gen.seed);
  genCmd->add_option("--out", gen.out)->required();
  genCmd->add_option("--count", gen.count, "policies for the O profiles");
  genCmd->add_option("--queries-per-business", gen.queriesPerBusiness);
  genCmd->add_option("--stratify", gen.stratify, "business policies grouped by interval parameter 1..N");
  genCmd->add_option("--per-bucket", gen.perBucket);
  genCmd->add_option("--consents", gen.consents, "consents per business policy when stratified");

  BenchArgs bench;
  auto *benchCmd = app.add_subcommand("bench", "time a corpus");
  benchCmd->add_option("--corpus", bench.corpus)->required()->check(CLI::ExistingDirectory);
  benchCmd->add_option("--opt", bench.opt, "comma-separated variants");
  benchCmd->add_option("--splitter", bench.splitter)->check(CLI::IsMember({"naive", "refined"}));
  benchCmd->add_option("--repeat", bench.repeat);
  benchCmd->add_option("--out", bench.out);
  benchCmd->add_option("--summary", bench.summary);
  benchCmd->add_option("--timeout-ms", bench.timeoutMs);
  benchCmd->add_option("--limit", bench.limit);
  benchCmd->add_option("--warmup", bench.warmup);
  benchCmd->add_option("--max-pieces", bench.maxPieces, "Split piece budget per query; 0 disables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*check)
      return run_check(in, lhs, rhs, compileMode, opt, splitter);
    if (*validate)
      return run_validate(in, policy);
    if (*normalize)
      return run_normalize(in, policy, out);
    if (*splitCmd)
      return run_split(in, lhs, rhs, splitter, out);
    if (*compileCmd)
      return run_compile(in, policies, outDir, out);
    if (*singleAtom)
      return run_single_atom(in, policies, outDir, out);
    if (*genCmd)
      return run_gen(gen);
    if (*benchCmd)
      return run_bench_cmd(bench);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
