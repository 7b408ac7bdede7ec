// Acceptance suite: one criterion per section, one pass/fail line each.
// Run via ctest (test name "acceptance") or directly; exits nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bonsai/cli.hh"
#include "bonsai/oracle.hh"
#include "bonsai/solver.hh"
#include "bonsai/unreal.hh"
#include "paired_corpus.hh"
#include "testutil.hh"

using namespace bonsai;
using clock_type = std::chrono::steady_clock;

namespace {

int criteria_run = 0;
int criteria_failed = 0;

void report(int index, const char* title, bool pass, const std::string& detail,
            double seconds) {
  ++criteria_run;
  if (!pass) ++criteria_failed;
  std::printf("[%d/9] %-28s %s (%s) [%.1fs]\n", index, title,
              pass ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
}

struct timer {
  clock_type::time_point start = clock_type::now();
  double seconds() const {
    return std::chrono::duration<double>(clock_type::now() - start).count();
  }
};

std::vector<solve_config> config_cross_product() {
  std::vector<solve_config> cfgs;
  for (vec_storage vec : {vec_storage::plain, vec_storage::lanes})
    for (downset_backend ds :
         {downset_backend::antichain, downset_backend::full,
          downset_backend::kdtree, downset_backend::bins})
      for (bool bools : {false, true})
        for (input_mode im : {input_mode::pure, input_mode::refined})
          for (bool pre : {false, true})
            for (picker_kind pk :
                 {picker_kind::round_robin, picker_kind::critical,
                  picker_kind::critical_rand_partial,
                  picker_kind::critical_rand_full}) {
              solve_config cfg;
              cfg.vec = vec;
              cfg.ds = ds;
              cfg.boolean_split = bools;
              cfg.inputs = im;
              cfg.precompute = pre;
              cfg.picker = pk;
              cfgs.push_back(cfg);
            }
  return cfgs;
}

struct corpus_entry {
  automaton aut;
  int k;
};

std::vector<corpus_entry> make_corpus(size_t size) {
  std::mt19937_64 rng(2024);
  std::vector<corpus_entry> corpus;
  corpus.reserve(size);
  const double densities[] = {0.15, 0.3, 0.5, 0.7, 0.9};
  while (corpus.size() < size) {
    test::rand_aut_opts opts;
    opts.max_states = 5;
    opts.n_inputs = 1 + corpus.size() % 2;
    opts.n_outputs = 1 + (corpus.size() / 2) % 2;
    opts.edge_prob = densities[corpus.size() % 5];
    opts.buchi_prob = corpus.size() % 7 == 0 ? 0.0 : 0.4;
    int k = 1 + static_cast<int>(corpus.size() % 3);
    corpus.push_back({test::random_automaton(rng, opts), k});
  }
  return corpus;
}

// --- criterion 1: oracle equivalence over the full configuration space ----

void criterion_oracle_equivalence(const std::vector<corpus_entry>& corpus) {
  timer t;
  auto cfgs = config_cross_product();
  size_t solves = 0, mismatches = 0;
  for (const corpus_entry& entry : corpus) {
    bool expected = oracle_solve(entry.aut, entry.k);
    for (solve_config cfg : cfgs) {
      cfg.k = entry.k;
      auto got = solve(entry.aut, cfg);
      ++solves;
      if (got != expected) ++mismatches;
    }
  }
  std::ostringstream detail;
  detail << corpus.size() << " automata x " << cfgs.size() << " configs = "
         << solves << " solves, " << mismatches << " mismatches";
  report(1, "oracle equivalence", mismatches == 0, detail.str(), t.seconds());
}

// --- criterion 2: fixed-point order independence --------------------------

void criterion_order_independence(const std::vector<corpus_entry>& corpus) {
  timer t;
  size_t mismatches = 0, runs = 0;
  for (size_t i = 0; i < 100 && i < corpus.size(); ++i) {
    const corpus_entry& entry = corpus[i];
    std::string reference;
    for (picker_kind pk : {picker_kind::round_robin, picker_kind::critical,
                           picker_kind::critical_rand_partial,
                           picker_kind::critical_rand_full})
      for (uint64_t seed = 0; seed < 10; ++seed) {
        solve_config cfg;
        cfg.k = entry.k;
        cfg.picker = pk;
        cfg.seed = seed;
        auto r = solve_detailed(entry.aut, cfg);
        ++runs;
        std::string dump = r.fixpoint.has_value() ? r.fixpoint->dump() : "?";
        if (reference.empty())
          reference = dump;
        else if (dump != reference)
          ++mismatches;
      }
  }
  std::ostringstream detail;
  detail << runs << " runs (4 pickers x 10 seeds x 100 instances), "
         << mismatches << " differing fixpoints";
  report(2, "order independence", mismatches == 0, detail.str(), t.seconds());
}

// --- criterion 3: downset backend equivalence ------------------------------

void criterion_downset_equivalence() {
  timer t;
  std::mt19937_64 rng(3030);
  const std::vector<downset_backend> backends{
      downset_backend::antichain, downset_backend::full,
      downset_backend::kdtree, downset_backend::bins};
  size_t sequences = 100000, failures = 0, probes = 0;
  for (size_t seq = 0; seq < sequences; ++seq) {
    uint32_t n = 1 + rng() % 8;
    int k = 1 + static_cast<int>(rng() % 7);
    auto shape = vector_shape::create(n, k, vec_storage::plain);
    auto rand_vec = [&] {
      std::vector<int> vals(n);
      for (auto& v : vals) v = static_cast<int>(rng() % (k + 2)) - 1;
      return state_vector::from_states(shape, vals);
    };
    std::vector<downset> sets;
    for (auto be : backends) sets.emplace_back(be, shape);

    auto check_antichains = [&] {
      for (const downset& d : sets) {
        auto ms = d.max_elements();
        for (size_t x = 0; x < ms.size(); ++x)
          for (size_t y = 0; y < ms.size(); ++y)
            if (x != y && ms[x].dominates(ms[y])) ++failures;
      }
    };

    size_t ops = 4 + rng() % 6;
    for (size_t op = 0; op < ops; ++op) {
      switch (rng() % 4) {
        case 0: {
          auto v = rand_vec();
          bool first = sets[0].insert(v);
          for (size_t b = 1; b < sets.size(); ++b)
            if (sets[b].insert(v) != first) ++failures;
          check_antichains();
          break;
        }
        case 1: {
          auto v = rand_vec();
          ++probes;
          bool first = sets[0].contains(v);
          for (size_t b = 1; b < sets.size(); ++b)
            if (sets[b].contains(v) != first) ++failures;
          break;
        }
        case 2: {
          downset other(sets[0].backend(), shape);
          for (int e = 0; e < 2; ++e) other.insert(rand_vec());
          for (auto& d : sets) d = d.union_with(other);
          check_antichains();
          break;
        }
        default: {
          downset other(sets[0].backend(), shape);
          for (int e = 0; e < 3; ++e) other.insert(rand_vec());
          for (auto& d : sets) d = d.intersect_with(other);
          check_antichains();
          break;
        }
      }
    }
    for (size_t x = 0; x < sets.size(); ++x)
      for (size_t y = x + 1; y < sets.size(); ++y)
        if (!sets[x].equal(sets[y])) ++failures;
  }
  std::ostringstream detail;
  detail << sequences << " sequences, " << probes << " probes, " << failures
         << " disagreements";
  report(3, "downset backend equivalence", failures == 0, detail.str(),
         t.seconds());
}

// --- criterion 4: sufficiency / terminality --------------------------------

void criterion_sufficiency() {
  timer t;
  std::mt19937_64 rng(4040);
  size_t failures = 0;
  for (int round = 0; round < 200; ++round) {
    test::rand_aut_opts opts;
    opts.max_states = 4;
    opts.n_inputs = 1 + rng() % 3;
    opts.n_outputs = 1 + rng() % 3;
    opts.edge_prob = 0.4 + 0.1 * (rng() % 5);
    automaton a = test::random_automaton(rng, opts);
    bool_engine& eng = a.engine();
    std::vector<bool_fn> labels;
    for (const transition& tr : a.transitions()) labels.push_back(tr.label);
    auto terminal = sufficient_terminal_ios(eng, labels);

    auto pair_list = [&](bool_fn x) {
      std::vector<std::pair<uint32_t, uint32_t>> pl;
      io_action act = ioact(a, x);
      for (uint32_t p = 0; p < a.n_states(); ++p)
        for (const auto& [q, dec] : act.pairs().row(p)) pl.emplace_back(p, q);
      return pl;
    };
    auto family_of = [&](std::span<const bool_fn> ios) {
      std::set<std::vector<std::pair<uint32_t, uint32_t>>> fam;
      for (bool_fn x : ios) fam.insert(pair_list(x));
      return fam;
    };
    if (family_of(terminal) != oracle_pure_ioacts(a)) ++failures;

    std::vector<var_id> vars(a.inputs().begin(), a.inputs().end());
    vars.insert(vars.end(), a.outputs().begin(), a.outputs().end());
    for (bool_fn x : terminal) {
      auto xa = pair_list(x);
      for (const cube& c : eng.enumerate_pure(x, vars)) {
        auto ya = pair_list(eng.cube_fn(c));
        if (!std::includes(ya.begin(), ya.end(), xa.begin(), xa.end()))
          ++failures;
      }
    }
  }

  // The collapse scenario must yield exactly {i&o1, i&!o1, !i}.
  {
    auto eng = std::make_shared<bool_engine>();
    var_id i = eng->declare("i", var_kind::input);
    var_id o1 = eng->declare("o1", var_kind::output);
    eng->declare("o2", var_kind::output);
    bool_fn l1 = eng->conj(eng->mk_var(i), eng->mk_var(o1));
    bool_fn l2 = eng->conj(eng->mk_var(i), eng->neg(eng->mk_var(o1)));
    std::vector<bool_fn> labels{l1, l2};
    auto p = sufficient_terminal_ios(*eng, labels);
    std::set<bool_fn> got(p.begin(), p.end());
    std::set<bool_fn> want{l1, l2, eng->neg(eng->mk_var(i))};
    if (got != want) ++failures;
  }
  std::ostringstream detail;
  detail << "200 automata, exact family match + terminality, " << failures
         << " failures";
  report(4, "sufficiency/terminality", failures == 0, detail.str(), t.seconds());
}

// --- criterion 5: boolean split soundness ----------------------------------

void criterion_boolean_split(const std::vector<corpus_entry>& corpus) {
  timer t;
  size_t mismatches = 0;
  for (const corpus_entry& entry : corpus) {
    solve_config on;
    on.k = entry.k;
    on.boolean_split = true;
    solve_config off = on;
    off.boolean_split = false;
    if (solve(entry.aut, on) != solve(entry.aut, off)) ++mismatches;
  }
  std::ostringstream detail;
  detail << corpus.size() << " instances, " << mismatches
         << " verdict flips between bool-states on/off";
  report(5, "boolean-split soundness", mismatches == 0, detail.str(),
         t.seconds());
}

// --- criterion 6: determinacy on the paired corpus -------------------------

void criterion_determinacy() {
  timer t;
  size_t wrong = 0, both = 0, n = 0;
  for (const auto& inst : test::paired_corpus()) {
    ++n;
    // the CLI race with the default schedule
    std::string fa = "acc_a.hoa", fn = "acc_n.hoa";
    {
      std::ofstream oa(fa);
      oa << inst.hoa;
      std::ofstream on(fn);
      on << inst.neg_hoa;
    }
    std::ostringstream out, err;
    int code = cli_main({"--aut", fa, "--neg-aut", fn, "--check", "both"}, out, err);
    bool expect_real = inst.realizable;
    if (expect_real && (code != 10 || out.str() != "REALIZABLE\n")) ++wrong;
    if (!expect_real && (code != 20 || out.str() != "UNREALIZABLE\n")) ++wrong;

    // never-both, probed directly at several k
    automaton a = parse_hoa_string(inst.hoa);
    automaton neg = parse_hoa_string(inst.neg_hoa);
    for (int k : {1, 2, 4, 8, 16}) {
      solve_config cfg;
      cfg.k = k;
      auto r = solve(a, cfg);
      auto u = check_unreal(neg, cfg);
      if (r == true && u == true) ++both;
    }
    std::remove(fa.c_str());
    std::remove(fn.c_str());
  }
  std::ostringstream detail;
  detail << n << " pairs, " << wrong << " wrong verdicts, " << both
         << " double fires";
  report(6, "determinacy (never-both)", wrong == 0 && both == 0, detail.str(),
         t.seconds());
}

// --- criterion 7: output-shifting hand traces -------------------------------

void criterion_shift_traces() {
  timer t;
  size_t failures = 0;

  {
    automaton a = test::make_loop_aut();
    shift_result r = shift_outputs(a);
    bool ok = r.aut.n_states() == 1 && r.aut.transitions().size() == 1
              && r.aut.transitions()[0].src == 0 && r.aut.transitions()[0].dst == 0
              && r.aut.transitions()[0].label == a.engine().tt()
              && r.aut.is_buchi(0) && r.origin.size() == 1
              && r.origin[0].pending == a.engine().tt();
    if (!ok) ++failures;
  }
  {
    auto eng = std::make_shared<bool_engine>();
    var_id i = eng->declare("i", var_kind::input);
    var_id o = eng->declare("o", var_kind::output);
    bool_fn io = eng->conj(eng->mk_var(i), eng->mk_var(o));
    automaton a(eng, 2, 0, {{0, 1, io}}, {}, {i}, {o});
    shift_result r = shift_outputs(a);
    bool ok = r.aut.n_states() == 2 && r.origin.size() == 2
              && r.origin[0].base == 0 && r.origin[0].pending == eng->tt()
              && r.origin[1].base == 1 && r.origin[1].pending == eng->mk_var(o)
              && r.aut.transitions().size() == 1
              && r.aut.transitions()[0].src == 0
              && r.aut.transitions()[0].dst == 1
              && r.aut.transitions()[0].label == eng->mk_var(i)
              && r.aut.buchi_states().empty();
    if (!ok) ++failures;
  }
  report(7, "output-shift hand traces", failures == 0,
         failures == 0 ? "2 structural traces match" : "trace mismatch",
         t.seconds());
}

// --- criterion 8: performance sanity ----------------------------------------

double time_vector_workload(vec_storage storage, uint32_t n_states) {
  const int k = 7;
  std::mt19937_64 rng(8080 + n_states);
  auto shape = vector_shape::create(n_states, k, storage);

  // Dense antichain: constant-score vectors are pairwise incomparable.
  auto make_antichain_set = [&](size_t count) {
    std::vector<state_vector> vs;
    std::vector<int> base(n_states);
    for (uint32_t q = 0; q < n_states; ++q)
      base[q] = static_cast<int>((q * (k + 1)) / n_states);
    for (size_t e = 0; e < count; ++e) {
      std::shuffle(base.begin(), base.end(), rng);
      vs.push_back(state_vector::from_states(shape, base));
    }
    return downset::closure_of(downset_backend::antichain, shape, std::move(vs));
  };

  timer t;
  downset a = make_antichain_set(220);
  downset b = make_antichain_set(220);
  size_t hits = 0;
  std::vector<int> probe(n_states);
  for (int round = 0; round < 1500; ++round) {
    for (auto& v : probe) v = static_cast<int>(rng() % (k + 2)) - 1;
    hits += a.contains(state_vector::from_states(shape, probe)) ? 1 : 0;
  }
  downset both = a.intersect_with(b);
  hits += both.antichain_size();
  if (hits == SIZE_MAX) std::abort(); // keep the work observable
  return t.seconds();
}

void criterion_performance() {
  timer t;
  std::ostringstream detail;
  bool pass = true;

  // (a) lane-parallel vectors vs plain
  for (uint32_t n : {50u, 100u, 200u}) {
    double plain = 1e100, lanes = 1e100;
    for (int rep = 0; rep < 3; ++rep) {
      plain = std::min(plain, time_vector_workload(vec_storage::plain, n));
      lanes = std::min(lanes, time_vector_workload(vec_storage::lanes, n));
    }
    detail << "Q=" << n << ": plain " << static_cast<int>(plain * 1e3)
           << "ms lanes " << static_cast<int>(lanes * 1e3) << "ms; ";
    if (lanes > 1.10 * plain) pass = false;
    if (n == 200 && lanes >= plain) pass = false;
  }

  // (b) refined input selection applies cpre strictly less often than pure
  // on instances whose labels ignore one input proposition.
  for (int variant = 0; variant < 3; ++variant) {
    auto eng = std::make_shared<bool_engine>();
    var_id i1 = eng->declare("i1", var_kind::input);
    eng->declare("i2", var_kind::input);
    var_id o1 = eng->declare("o1", var_kind::output);
    bool_fn a1 = eng->conj(eng->mk_var(i1), eng->mk_var(o1));
    bool_fn a2 = eng->conj(eng->mk_var(i1), eng->neg(eng->mk_var(o1)));
    bool_fn ni = eng->neg(eng->mk_var(i1));
    uint32_t n = 2 + variant;
    std::vector<transition> trans;
    for (uint32_t q = 0; q < n; ++q) {
      trans.push_back({q, (q + 1) % n, a1});
      trans.push_back({q, q, a2});
      trans.push_back({q, (q + 1) % n, ni});
    }
    std::vector<uint32_t> buchi{0};
    automaton aut(eng, n, 0, std::move(trans), std::move(buchi),
                  {i1, eng->find("i2")}, {o1});

    auto count_steps = [&](input_mode mode) {
      solve_config cfg;
      cfg.k = 3;
      cfg.inputs = mode;
      cfg.picker = picker_kind::round_robin;
      std::ostringstream trace;
      cfg.trace = &trace;
      solve(aut, cfg);
      size_t lines = 0;
      std::istringstream in(trace.str());
      std::string line;
      while (std::getline(in, line))
        if (line.rfind("iter=", 0) == 0) ++lines;
      return lines;
    };
    size_t pure_steps = count_steps(input_mode::pure);
    size_t refined_steps = count_steps(input_mode::refined);
    detail << "cpre pure/refined " << pure_steps << "/" << refined_steps << "; ";
    if (refined_steps >= pure_steps) pass = false;
  }

  report(8, "performance sanity", pass, detail.str(), t.seconds());
}

// --- criterion 9: saturation arithmetic -------------------------------------

void criterion_saturation() {
  timer t;
  size_t failures = 0;
  for (vec_storage st : {vec_storage::plain, vec_storage::lanes})
    for (int k = 1; k <= 4; ++k) {
      auto shape = vector_shape::create(2, k, st);
      for (int a = -1; a <= k; ++a)
        for (int b = -1; b <= k; ++b)
          for (uint8_t m0 : {0, 1})
            for (uint8_t m1 : {0, 1}) {
              std::vector<int> vals{a, b};
              std::vector<uint8_t> mask{m0, m1};
              auto r = state_vector::from_states(shape, vals).dec_if(mask);
              if (r.value(0) != std::max(a - m0, -1)) ++failures;
              if (r.value(1) != std::max(b - m1, -1)) ++failures;
            }
    }

  // Empty minimum is the ceiling: the io-action with no compatible pairs.
  automaton real = test::make_real_aut();
  bool_engine& eng = real.engine();
  bool_fn ino = eng.conj(eng.mk_var(eng.find("i")), eng.neg(eng.mk_var(eng.find("o"))));
  for (int k : {1, 2, 3, 7}) {
    auto shape = vector_shape::create(1, k, vec_storage::plain);
    auto s = downset::from_vector(downset_backend::antichain,
                                  state_vector::bottom(shape));
    downset img = bwd(s, ioact(real, ino));
    if (img.max_elements().size() != 1
        || img.max_elements()[0].value(0) != k)
      ++failures;
  }
  std::ostringstream detail;
  detail << "exhaustive dec_if grids + empty-min ceiling, " << failures
         << " failures";
  report(9, "saturation arithmetic", failures == 0, detail.str(), t.seconds());
}

} // namespace

int main() {
  timer total;
  std::printf("acceptance suite\n");
  auto corpus = make_corpus(500);
  criterion_oracle_equivalence(corpus);
  criterion_order_independence(corpus);
  criterion_downset_equivalence();
  criterion_sufficiency();
  criterion_boolean_split(corpus);
  criterion_determinacy();
  criterion_shift_traces();
  criterion_performance();
  criterion_saturation();
  std::printf("%d/%d criteria passed [%.1fs total]\n",
              criteria_run - criteria_failed, criteria_run, total.seconds());
  return criteria_failed == 0 ? 0 : 1;
}
