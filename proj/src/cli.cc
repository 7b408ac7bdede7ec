#include "bonsai/cli.hh"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "bonsai/automaton.hh"
#include "bonsai/solver.hh"
#include "bonsai/unreal.hh"

namespace bonsai {

namespace {

constexpr int exit_realizable = 10;
constexpr int exit_unrealizable = 20;
constexpr int exit_unknown = 0;
constexpr int exit_usage = 2;

struct run_plan {
  std::string aut_path;
  std::string neg_aut_path;
  std::string check = "real"; // real | unreal | both
  int k_initial = 1;
  double k_growth = 2.0;
  int k_max = 64;
  double timeout_s = 3600.0;
  bool assume_shifted = false; // --neg-aut file is already shifted + swapped
  std::vector<std::string> outs;
  bool dump_terminals = false;
  solve_config cfg;
};

// Wakes at the deadline and cancels both sides, unless released first.
class watchdog {
 public:
  watchdog(double seconds, std::atomic<bool>& a, std::atomic<bool>& b)
    : a_(a), b_(b),
      thread_([this, seconds] {
        std::unique_lock<std::mutex> lock(m_);
        if (!cv_.wait_for(lock, std::chrono::duration<double>(seconds),
                          [this] { return done_; })) {
          fired_.store(true);
          a_.store(true);
          b_.store(true);
        }
      }) {}
  ~watchdog() {
    {
      std::lock_guard<std::mutex> lock(m_);
      done_ = true;
    }
    cv_.notify_all();
    thread_.join();
  }
  bool fired() const { return fired_.load(); }

 private:
  std::atomic<bool>& a_;
  std::atomic<bool>& b_;
  std::atomic<bool> fired_{false};
  std::mutex m_;
  std::condition_variable cv_;
  bool done_ = false;
  std::thread thread_;
};

automaton load_automaton(const std::string& path, const run_plan& plan,
                         std::ostream& err) {
  std::ifstream in(path);
  if (!in)
    throw usage_error("cannot open automaton file: " + path);
  hoa_options opts;
  opts.diagnostics = &err;
  if (!plan.outs.empty())
    opts.outputs_override = plan.outs;
  return parse_hoa(in, opts);
}

void dump_terminals(const automaton& aut, const solve_config& cfg,
                    std::ostream& err) {
  auto actions = sufficient_inputs(aut, cfg.inputs);
  size_t ios = 0;
  for (const auto& ia : actions) ios += ia.ios.size();
  err << "terminal inputs: " << actions.size() << ", io-actions: " << ios << "\n";
  for (const auto& ia : actions) {
    err << "  input " << aut.engine().to_string(ia.input) << ":";
    for (const auto& a : ia.ios)
      err << " " << aut.engine().to_string(a.label());
    err << "\n";
  }
}

int finish(std::ostream& out, const char* verdict, int code) {
  out << verdict << std::endl;
  return code;
}

int run(const run_plan& plan, std::ostream& out, std::ostream& err) {
  const bool want_real = plan.check == "real" || plan.check == "both";
  const bool want_unreal = plan.check == "unreal" || plan.check == "both";

  std::optional<automaton> aut, neg;
  if (want_real)
    aut = load_automaton(plan.aut_path, plan, err);
  if (want_unreal)
    neg = load_automaton(plan.neg_aut_path, plan, err);

  if (plan.dump_terminals) {
    if (aut) dump_terminals(*aut, plan.cfg, err);
    if (neg) dump_terminals(*neg, plan.cfg, err);
  }

  std::vector<int> schedule = k_schedule(plan.k_initial, plan.k_growth, plan.k_max);

  std::atomic<bool> cancel_real{false}, cancel_unreal{false};
  watchdog dog(plan.timeout_s, cancel_real, cancel_unreal);

  auto unreal_once = [&](const solve_config& cfg) -> std::optional<bool> {
    if (plan.assume_shifted)
      return bonsai::solve(*neg, cfg);
    return check_unreal(*neg, cfg);
  };

  for (int k : schedule) {
    solve_config cfg_real = plan.cfg;
    cfg_real.k = k;
    cfg_real.cancel = &cancel_real;
    solve_config cfg_unreal = plan.cfg;
    cfg_unreal.k = k;
    cfg_unreal.cancel = &cancel_unreal;

    if (plan.check == "real") {
      if (bonsai::solve(*aut, cfg_real) == true)
        return finish(out, "REALIZABLE", exit_realizable);
    } else if (plan.check == "unreal") {
      if (unreal_once(cfg_unreal) == true)
        return finish(out, "UNREALIZABLE", exit_unrealizable);
    } else {
      // Race the two checks; the first definitive verdict cancels the other.
      std::optional<bool> r_real, r_unreal;
      std::thread t_real([&] {
        r_real = bonsai::solve(*aut, cfg_real);
        if (r_real == true) cancel_unreal.store(true);
      });
      std::thread t_unreal([&] {
        r_unreal = unreal_once(cfg_unreal);
        if (r_unreal == true) cancel_real.store(true);
      });
      t_real.join();
      t_unreal.join();
      if (r_real == true)
        return finish(out, "REALIZABLE", exit_realizable);
      if (r_unreal == true)
        return finish(out, "UNREALIZABLE", exit_unrealizable);
      // Cancellations fired by a winning sibling never outlive the step.
      cancel_real.store(dog.fired());
      cancel_unreal.store(dog.fired());
    }
    if (dog.fired()) break;
  }
  return finish(out, "UNKNOWN", exit_unknown);
}

} // namespace

std::vector<int> k_schedule(int initial, double growth, int max) {
  if (initial < 1) throw usage_error("k schedule must start at 1 or above");
  if (growth <= 1.0) throw usage_error("k growth factor must exceed 1");
  if (max < initial) throw usage_error("k maximum below the initial k");
  std::vector<int> ks;
  int k = initial;
  for (;;) {
    ks.push_back(k);
    if (k >= max) break;
    k = std::min(static_cast<int>(std::ceil(k * growth)), max);
  }
  return ks;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"bonsai-real: downset-based realizability for Büchi automata "
               "over split input/output alphabets"};
  run_plan plan;
  std::string ltl;

  app.add_option("--aut", plan.aut_path, "automaton file (HOA v1)");
  app.add_option("--neg-aut", plan.neg_aut_path,
                 "automaton for the negated specification (HOA v1)");
  app.add_option("--check", plan.check, "check to run")
      ->check(CLI::IsMember({"real", "unreal", "both"}))
      ->capture_default_str();
  app.add_option("-k,--kinit", plan.k_initial, "initial k")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--kgrowth", plan.k_growth, "k growth factor (> 1)")
      ->capture_default_str();
  app.add_option("--kmax", plan.k_max, "k ceiling")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--timeout", plan.timeout_s, "time limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--outs", plan.outs,
                 "comma-separated output propositions (overrides "
                 "controllable-AP)")
      ->delimiter(',');
  std::string downset_name = "kdtree", vector_name = "lanes",
              bool_states = "on", inputs_name = "refined", precompute = "on",
              picker_name = "critical", preprocess = "off";
  app.add_option("--downset", downset_name, "downset backend")
      ->check(CLI::IsMember({"antichain", "full", "kdtree", "bins"}))
      ->capture_default_str();
  app.add_option("--vector", vector_name, "vector backend")
      ->check(CLI::IsMember({"plain", "lanes"}))
      ->capture_default_str();
  app.add_option("--bool-states", bool_states, "one-bit bounded states")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--inputs", inputs_name, "input selection")
      ->check(CLI::IsMember({"pure", "refined"}))
      ->capture_default_str();
  app.add_option("--precompute", precompute, "precompute action pair tables")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--picker", picker_name, "input-action picker")
      ->check(CLI::IsMember({"rr", "critical", "critical-randp", "critical-randf"}))
      ->capture_default_str();
  app.add_option("--preprocess", preprocess, "useless-state removal hook (reserved)")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--seed", plan.cfg.seed, "picker randomization seed")
      ->capture_default_str();
  app.add_option("--step-budget", plan.cfg.step_budget,
                 "abort a run after this many cpre applications")
      ->capture_default_str();
  app.add_flag("--trace", "per-iteration trace on the error stream");
  app.add_flag("--dump-terminals", plan.dump_terminals,
               "print the terminal inputs/IOs and their counts");
  app.add_flag("--assume-shifted",
               "treat --neg-aut as already output-shifted and role-swapped");
  app.add_option("--ltl", ltl, "reserved");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (!ltl.empty())
      throw usage_error(
          "--ltl is reserved: compile the formula to a Büchi automaton with "
          "an external LTL compiler and pass it via --aut");
    plan.cfg.ds = downset_name == "antichain" ? downset_backend::antichain
                  : downset_name == "full"    ? downset_backend::full
                  : downset_name == "bins"    ? downset_backend::bins
                                              : downset_backend::kdtree;
    plan.cfg.vec = vector_name == "plain" ? vec_storage::plain : vec_storage::lanes;
    plan.cfg.boolean_split = bool_states == "on";
    plan.cfg.inputs = inputs_name == "pure" ? input_mode::pure : input_mode::refined;
    plan.cfg.precompute = precompute == "on";
    plan.cfg.run_preprocess = preprocess == "on";
    plan.cfg.picker = picker_name == "rr"             ? picker_kind::round_robin
                      : picker_name == "critical-randp" ? picker_kind::critical_rand_partial
                      : picker_name == "critical-randf" ? picker_kind::critical_rand_full
                                                        : picker_kind::critical;
    if (app.count("--trace")) plan.cfg.trace = &err;
    plan.assume_shifted = app.count("--assume-shifted") > 0;

    if (plan.aut_path.empty() && plan.check != "unreal")
      throw usage_error("--aut is required");
    if (plan.check != "real" && plan.neg_aut_path.empty())
      throw usage_error("--check " + plan.check + " needs --neg-aut");

    return run(plan, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

} // namespace bonsai
