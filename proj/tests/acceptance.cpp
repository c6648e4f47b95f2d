// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance <cli-binary> <stories.json>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stluck/luck.hpp"
#include "stluck/measures.hpp"
#include "stluck/scenario.hpp"
#include "stluck/search.hpp"
#include "stluck/world.hpp"

#include "oracle.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void criterion(int number, const std::string& name,
               const std::function<std::string()>& body) {
  const auto start = Clock::now();
  try {
    const std::string detail = body();
    std::printf("[PASS] criterion %d: %s (%s, %.2f s)\n", number, name.c_str(),
                detail.c_str(), seconds_since(start));
  } catch (const std::exception& e) {
    ++g_failures;
    std::printf("[FAIL] criterion %d: %s: %s\n", number, name.c_str(), e.what());
  }
  std::fflush(stdout);
}

void require(bool cond, const std::string& message) {
  if (!cond) throw std::runtime_error(message);
}

void require_close(double actual, double expected, double tol,
                   const std::string& what) {
  if (!(std::abs(actual - expected) <= tol)) {
    std::ostringstream ss;
    ss.precision(17);
    ss << what << ": got " << actual << ", want " << expected << " +/- " << tol;
    throw std::runtime_error(ss.str());
  }
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

std::string g_cli_path;

CliResult run_cli(const std::string& args) {
  const std::string cmd = "'" + g_cli_path + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  CliResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

stluck::luck::NearMissScene discrete(double l0, double l2, double delta, long k,
                                     double v) {
  stluck::luck::NearMissScene s;
  s.geometry = stluck::luck::Geometry::discrete_bounded;
  s.l0 = l0;
  s.l2 = l2;
  s.delta = delta;
  s.k = k;
  s.v = v;
  return s;
}

// --- criteria -------------------------------------------------------------

std::string discrete_near_miss_closed_form() {
  using namespace stluck::luck;
  const auto start = Clock::now();

  const auto pinned = near_miss_discrete(discrete(100, 1, 5, 1, 10));
  require_close(pinned.value, 10.0 + std::log2(100.0 / 5.0) - 2.0, 1e-9,
                "pinned scene value");
  require(pinned.eta_star == 0.0, "pinned scene eta* must be 0");

  long triples = 0;
  for (long l0 = 10; l0 <= 1000; l0 += 10) {
    const long l2s[] = {1, l0 / 8, l0 / 4, l0 / 2, (3 * l0) / 4, l0};
    long prev_l2 = 0;
    for (long l2 : l2s) {
      if (l2 < 1 || l2 == prev_l2) continue;
      prev_l2 = l2;
      const long stride = std::max(1L, l2 / 20);
      for (long delta = 1; delta <= l2; delta += stride) {
        const auto r = near_miss_discrete(discrete(
            static_cast<double>(l0), static_cast<double>(l2),
            static_cast<double>(delta), 1, 10.0));
        const double closed =
            10.0 + std::log2(static_cast<double>(l0) / static_cast<double>(delta)) -
            2.0;
        require_close(r.value, closed, 1e-9,
                      "sweep vs closed form at l0=" + std::to_string(l0) +
                          " l2=" + std::to_string(l2) +
                          " delta=" + std::to_string(delta));
        require(r.eta_star == 0.0, "eta* must be 0 on the grid");
        ++triples;
      }
    }
  }
  require(triples >= 10000, "grid has only " + std::to_string(triples) + " triples");
  require(seconds_since(start) < 5.0, "grid sweep exceeded 5 s");
  return std::to_string(triples) + " grid triples";
}

std::string continuous_near_miss() {
  using namespace stluck::luck;
  const auto start = Clock::now();
  NearMissScene s;
  s.geometry = Geometry::continuous_unbounded;
  s.l0 = 100;
  s.delta = 5;
  s.v = 10;
  s.alpha = 1;
  const auto r = near_miss_continuous(s);
  require_close(r.value, 10.0 + std::log2(100.0 / 5.0) - 1.0, 1e-9, "value at alpha=1");
  require(r.eta_star == 0.0, "eta* must be 0");
  for (double alpha : {0.5, 0.1, 0.01}) {
    s.alpha = alpha;
    const auto ra = near_miss_continuous(s);
    require_close(ra.value, r.value, 1e-9,
                  "alpha invariance at alpha=" + std::to_string(alpha));
  }
  require(seconds_since(start) < 1.0, "continuous sweep exceeded 1 s");
  return "alpha in {1, 0.5, 0.1, 0.01}";
}

std::string sector_penalty_exact() {
  using namespace stluck::luck;
  const struct {
    double l0, l2, delta, v;
  } scenes[] = {{100, 10, 5, 10}, {360, 30, 5, 10}, {1000, 250, 17, 3}};
  for (const auto& sc : scenes) {
    const double l2_base =
        near_miss_discrete(discrete(sc.l0, sc.l2, sc.delta, 1, sc.v)).value;
    const double l3_base =
        near_miss_expectation_baseline(discrete(sc.l0, sc.l2, sc.delta, 1, sc.v))
            .value;
    for (long k = 1; k <= 16; ++k) {
      const double expected_l2 = l2_base - std::log2(static_cast<double>(k));
      const double expected_l3 = l3_base - std::log2(static_cast<double>(k));
      const double got_l2 =
          near_miss_discrete(discrete(sc.l0, sc.l2, sc.delta, k, sc.v)).value;
      const double got_l3 =
          near_miss_expectation_baseline(discrete(sc.l0, sc.l2, sc.delta, k, sc.v))
              .value;
      require(got_l2 == expected_l2,
              "L2 sector penalty not exact at k=" + std::to_string(k));
      require(got_l3 == expected_l3,
              "L3 sector penalty not exact at k=" + std::to_string(k));
    }
  }
  return "k in {1..16}, bit-exact, 3 scenes";
}

std::string figure_ordering() {
  using namespace stluck::luck;
  const double a =
      near_miss_expectation_baseline(discrete(360, 30, 5, 1, 10)).value;
  const double b =
      near_miss_expectation_baseline(discrete(360, 90, 5, 1, 10)).value;
  const double c =
      near_miss_expectation_baseline(discrete(360, 30, 5, 3, 10)).value;
  require_close(a, 10.584962500721156, 1e-9, "narrow-sector scene");
  require_close(b, 12.169925001442312, 1e-9, "wide-sector scene");
  require(b > a, "wide sector must beat narrow sector");
  require(c == a - std::log2(3.0), "split-sector penalty must be exact");
  require(c < a, "split sectors must weaken the feeling");
  return "b > a > c reproduced";
}

std::string lottery_and_oracle() {
  using namespace stluck::mdl;
  const auto start = Clock::now();

  const std::vector<long> run{22, 23, 24, 25, 26, 27};
  const IntRange lotto{1, 49};
  const auto d = shortest_description(run, lotto);
  require(std::holds_alternative<ArithSeq>(d.code->node()),
          "lotto run must compress to an arithmetic-sequence code");
  const double cw = generation_complexity(uniform_draw_world(6, 49)).bits;
  const double u_run = stluck::measures::unexpectedness(
      stluck::BitCost(cw), d.cost);
  require(u_run > 10.0, "lotto run unexpectedness must exceed 10 bits");

  const std::vector<long> plain{3, 11, 25, 31, 40, 46};
  const auto dp = shortest_description(plain, lotto);
  const double u_plain =
      stluck::measures::unexpectedness(stluck::BitCost(cw), dp.cost);
  require(u_plain <= 6.0, "patternless draw must stay within grammar overhead");

  // Full oracle: every sequence of length 1..6 over [1,9].
  const IntRange domain{1, 9};
  const auto best = oracle::enumerate_best(domain, 6);
  long checked = 0;
  std::vector<long> seq;
  std::function<void()> visit = [&]() {
    if (!seq.empty()) {
      const auto got = shortest_description(seq, domain);
      const auto it = best.find(oracle::pack(seq, domain.lo));
      require(it != best.end(), "oracle lacks a sequence");
      if (got.cost.bits != it->second.cost ||
          canonical_key(*got.code) != it->second.key) {
        std::ostringstream ss;
        ss << "oracle mismatch on [";
        for (long v : seq) ss << v << ' ';
        ss << "]: search " << got.cost.bits << " '" << canonical_key(*got.code)
           << "' vs oracle " << it->second.cost << " '" << it->second.key << "'";
        throw std::runtime_error(ss.str());
      }
      ++checked;
    }
    if (seq.size() == 6) return;
    for (long v = domain.lo; v <= domain.hi; ++v) {
      seq.push_back(v);
      visit();
      seq.pop_back();
    }
  };
  visit();
  require(checked == 9 + 81 + 729 + 6561 + 59049 + 531441,
          "oracle sweep must cover every sequence");
  require(seconds_since(start) < 60.0, "oracle suite exceeded 60 s");
  return std::to_string(checked) + " sequences vs oracle";
}

std::string equation_consistency() {
  using namespace stluck;
  using namespace stluck::luck;
  using namespace stluck::measures;

  std::mt19937 rng(987654321);
  std::uniform_real_distribution<double> feelings(-50.0, 50.0);
  std::uniform_real_distribution<double> costs(0.0, 50.0);

  for (int i = 0; i < 1000; ++i) {
    const double eh = feelings(rng), u = feelings(rng);
    const double gen = costs(rng), cwc = costs(rng);
    CausalLink link{"cause", "effect", BitCost(gen), BitCost(0.0)};
    require(causal_luck_actual(eh, u, link).value ==
                luck_actual(eh, propagate_unexpectedness(u, BitCost(gen))).value,
            "causal reading must equal propagation + plain reading exactly");
    CausalLink link2{"alt-cause", "alt", BitCost(cwc), BitCost(0.0)};
    require(causal_luck_counterfactual(eh, u, link2, BitCost(0.0)).value ==
                luck_counterfactual(eh, u, BitCost(cwc)).value,
            "zero-mutability causal reading must equal the direct one exactly");
  }

  for (int i = 0; i < 200; ++i) {
    const double root = feelings(rng);
    double folded = root;
    double sum = root;
    for (int j = 0; j < 6; ++j) {
      const double link = costs(rng);
      folded = propagate_unexpectedness(folded, BitCost(link));
      sum = sum + link;
    }
    require(folded == sum, "chain of links must fold to the sum of costs");
  }

  const auto p = subjective_probability(-3.0);
  require(p.value == 1.0 && p.clamped, "negative unexpectedness must clamp to p=1");
  require(subjective_probability(1.0).value == 0.5, "p(1 bit) must be 1/2");
  const auto e = emotion(2.0, -5.0);
  require(e.value == 0.0 && e.clamped, "emotion must clamp at zero and say so");
  require(emotion(5.0, 3.0).value == 8.0 && !emotion(5.0, 3.0).clamped,
          "positive emotion must pass through unclamped");
  const auto re = retro_emotion(Emotion{2.0, false}, BitCost(5.0));
  require(re.value == 0.0 && re.clamped, "retro emotion must clamp at zero");
  return "2000 exact equalities, clamping verified";
}

std::string stories_regression(const std::string& stories_path) {
  const auto start = Clock::now();
  std::ifstream f(stories_path);
  require(f.good(), "cannot open " + stories_path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto dataset = stluck::scenario::load_scenarios(ss.str());
  require(dataset.size() == 21, "shipped dataset must hold 21 choices");

  const auto report = stluck::scenario::run_stories(dataset);
  require(report.total == 21, "report must cover 21 choices");
  require(report.congruent_count == 19, "congruence must be exactly 19/21, got " +
                                            std::to_string(report.congruent_count));
  require(report.mismatches == std::vector<std::string>{"S5.2", "S9.1"},
          "mismatches must be exactly S5.2 and S9.1");
  for (const auto& c : report.choices) {
    require(c.matches_flags, "predicted set must match the shipped flags on " +
                                 c.story_id + "." + std::to_string(c.choice_index));
  }

  std::vector<stluck::scenario::StoryChoice> numeric;
  for (const auto& c : dataset) {
    const bool all_numeric =
        std::all_of(c.options.begin(), c.options.end(),
                    [](const stluck::scenario::Option& o) { return o.value.has_value(); });
    if (all_numeric && c.rule != stluck::scenario::Rule::eh_threshold) {
      numeric.push_back(c);
    }
  }
  require(numeric.size() == 16, "sixteen numeric-rule choices expected");
  const auto numeric_report = stluck::scenario::run_stories(numeric);
  require(numeric_report.congruent_count == 16, "numeric-rule subset must be 16/16");

  const auto cli = run_cli("stories --format json");
  require(cli.exit_code == 0, "stories verb must exit 0 on the shipped dataset");
  const auto payload = nlohmann::json::parse(cli.out);
  require(payload["report"]["congruent"] == 19, "CLI must report 19 congruent");

  require(seconds_since(start) < 1.0, "stories regression exceeded 1 s");
  return "19/21, mismatches {S5.2, S9.1}, numeric 16/16";
}

std::string cli_determinism() {
  const std::string scene_path = "acceptance_scene.json";
  {
    std::ofstream scene(scene_path);
    scene << R"({"actual": {"id": "missed", "C": 5, "Cw": 5, "Eh": 0},
                 "counterfactuals": [{"id": "caught", "C": 0, "Cw": 3, "Eh": 10, "cwc": 2}],
                 "near_miss": {"geometry": "discrete", "l0": 100, "delta": 5, "v": 10},
                 "rescher": {"emotion": 10, "probability": 0.5},
                 "teigen": {"delta_u": 10, "distance": 2}})";
  }

  const std::vector<std::string> matrix = {
      "describe --seq 22,23,24,25,26,27 --domain 1..49 --format json",
      "describe --seq 7 --domain 1..49 --format json",
      "describe --seq 5,5,5,5,9,8,7 --domain 1..9 --format json",
      "nearmiss --geometry discrete --l0 100 --delta 5 --v 10 --format json",
      "nearmiss --geometry discrete --l0 100 --delta 5 --v 10 --k 4 --format json",
      "nearmiss --geometry continuous --l0 100 --delta 5 --v 10 --alpha 0.25 --format json",
      "nearmiss --geometry discrete --l0 360 --l2 90 --delta 5 --v 10 --baseline expectation --format json",
      "stories --format json",
      "assess --scene " + scene_path + " --format json",
  };

  std::string first, second;
  for (const auto& args : matrix) {
    const auto r = run_cli(args);
    require(r.exit_code == 0, "command failed: " + args);
    // Machine output must round-trip through its own schema.
    const auto parsed = nlohmann::ordered_json::parse(r.out);
    require(parsed.dump(2) + "\n" == r.out, "output must round-trip: " + args);
    first += r.out;
  }
  for (const auto& args : matrix) second += run_cli(args).out;
  require(first == second, "two runs of the CLI matrix must match byte for byte");

  const auto bad = run_cli("describe --seq 1,2 --domain 5..9 --format json");
  require(bad.exit_code == 2, "domain error must exit 2");
  const auto bad2 = run_cli("nearmiss --geometry discrete --l0 100 --delta 0.25 --v 1");
  require(bad2.exit_code == 2, "sub-unit discrete miss must exit 2");
  std::remove(scene_path.c_str());
  return std::to_string(matrix.size()) + " commands, twice, byte-identical";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <cli-binary> <stories.json>\n");
    return 2;
  }
  g_cli_path = argv[1];
  const std::string stories_path = argv[2];

  criterion(1, "discrete near-miss closed form", discrete_near_miss_closed_form);
  criterion(2, "continuous near-miss, precision-invariant", continuous_near_miss);
  criterion(3, "sector penalty exact", sector_penalty_exact);
  criterion(4, "sector-size and sector-count ordering", figure_ordering);
  criterion(5, "lottery unexpectedness and search oracle", lottery_and_oracle);
  criterion(6, "equation consistency and clamping", equation_consistency);
  criterion(7, "stories regression",
            [&] { return stories_regression(stories_path); });
  criterion(8, "CLI determinism", cli_determinism);

  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
