// Copyright 2026 The Visplan Authors
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

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "visplan/apv.hpp"
#include "visplan/apv_lp.hpp"
#include "visplan/apvc.hpp"
#include "visplan/instgen.hpp"
#include "visplan/io.hpp"
#include "visplan/mnl.hpp"
#include "visplan/pricing.hpp"

namespace {

using nlohmann::json;
using namespace visplan;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::infeasible:
      return 2;
    case Errc::too_large:
    case Errc::budget_exceeded:
      return 3;
    case Errc::io:
      return 4;
    default:
      return 1;
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ASSORT_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

json plan_to_json(const Plan& plan) {
  json sets = json::array();
  for (const Assortment& s : plan.assortments) sets.push_back(s.members());
  return sets;
}

void emit(const json& doc, bool csv, const Plan* plan) {
  if (csv && plan != nullptr) {
    std::cout << "customer,product\n";
    for (std::size_t t = 0; t < plan->assortments.size(); ++t) {
      for (int i : plan->assortments[t].members()) {
        std::cout << t << ',' << i << '\n';
      }
    }
  } else {
    std::cout << doc.dump(2) << '\n';
  }
}

struct VerifyCheck {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<VerifyCheck> run_verify(const Instance& instance) {
  std::vector<VerifyCheck> checks;
  auto add = [&](const std::string& name, bool ok, std::string detail = "") {
    checks.push_back({name, ok, std::move(detail)});
  };

  const Plan plan = solve_apv(instance);
  bool nested = true, feasible = true;
  for (std::size_t t = 0; t + 1 < plan.assortments.size(); ++t) {
    for (int i : plan.assortments[t + 1].members()) {
      nested = nested && plan.assortments[t].contains(i);
    }
  }
  for (int i = 0; i < instance.num_products(); ++i) {
    int shown = 0;
    for (const Assortment& s : plan.assortments) shown += s.contains(i);
    feasible = feasible && shown >= instance.visibility_of(i);
  }
  add("plan is nested", nested);
  add("plan meets visibility floors", feasible);

  double recomputed = 0.0;
  for (const Assortment& s : plan.assortments) recomputed += revenue(instance, s);
  add("objective matches recomputation",
      std::abs(recomputed - plan.objective) <= 1e-9 * std::max(1.0, recomputed));

  if (instance.num_products() * instance.horizon() <= kBruteForceCellLimit) {
    const Plan oracle = brute_force_apv(instance);
    add("matches exhaustive search",
        std::abs(oracle.objective - plan.objective) <=
            1e-9 * std::max(1.0, oracle.objective),
        "exhaustive " + std::to_string(oracle.objective) + " vs " +
            std::to_string(plan.objective));
  }

  const ApvLp lp_form = build_apv_lp(instance);
  const lp::LpSolution sol = lp::solve_lp(lp_form.model);
  bool lp_ok = sol.status == lp::LpStatus::optimal &&
               std::abs(sol.value - plan.objective) <=
                   1e-6 * std::max(1.0, plan.objective);
  if (lp_ok) {
    const Plan extracted = extract_plan(instance, lp_form, sol);
    lp_ok = std::abs(extracted.objective - plan.objective) <=
            1e-6 * std::max(1.0, plan.objective);
  }
  add("LP value and extraction agree", lp_ok);

  const FeeReport fees = fee_report(instance);
  double fee_sum = 0.0;
  bool support_ok = true;
  for (int i = 0; i < instance.num_products(); ++i) {
    fee_sum += fees.fees[i];
    const bool negative = fees.contributions[i] < 0.0;
    if (fees.delta > 0.0 && fees.warning.empty()) {
      support_ok = support_ok && ((fees.fees[i] > 0.0) == negative);
    } else {
      support_ok = support_ok && fees.fees[i] == 0.0;
    }
  }
  add("fees share the loss exactly",
      std::abs(fee_sum - fees.delta) <= 1e-9 * std::max(1.0, fees.delta));
  add("fee support condition", support_ok);

  if (instance.cardinality_cap()) {
    const bool feas = check_feasibility(instance);
    add("cap feasibility decided", true, feas ? "feasible" : "infeasible");
    if (feas && instance.num_products() * instance.horizon() <=
                    kBruteForceCellLimit) {
      const Plan capped = brute_force_apvc(instance);
      bool ok = capped.objective <= plan.objective + 1e-9;
      if (*instance.cardinality_cap() >= instance.num_products()) {
        ok = ok && std::abs(capped.objective - plan.objective) <= 1e-9;
      }
      add("capped optimum consistent", ok);
    }
  }
  return checks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"assortment planning with visibility constraints"};
  app.require_subcommand(1);
  std::function<void()> action;

  // solve-apv
  auto* solve_apv_cmd =
      app.add_subcommand("solve-apv", "exact visibility-constrained planning");
  {
    auto opts = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>("nested");
    auto csv = std::make_shared<bool>(false);
    solve_apv_cmd->add_option("--instance", *opts, "instance JSON file")
        ->required();
    solve_apv_cmd->add_option("--method", *method, "nested or lp")
        ->check(CLI::IsMember({"nested", "lp"}));
    solve_apv_cmd->add_flag("--csv", *csv, "emit per-customer rows instead");
    solve_apv_cmd->callback([opts, method, csv, &action]() {
      action = [opts, method, csv]() {
        const Instance instance = load_instance(*opts);
        json doc;
        Plan plan;
        if (*method == "lp") {
          const ApvLp lp_form = build_apv_lp(instance);
          const lp::LpSolution sol = lp::solve_lp(lp_form.model);
          if (sol.status != lp::LpStatus::optimal) {
            throw Error(Errc::numeric, "planning LP did not solve to optimality");
          }
          plan = extract_plan(instance, lp_form, sol);
          doc["lp_value"] = sol.value;
        } else {
          plan = solve_apv(instance);
        }
        doc["command"] = "solve-apv";
        doc["method"] = *method;
        doc["objective"] = plan.objective;
        doc["assortments"] = plan_to_json(plan);
        emit(doc, *csv, &plan);
        std::cerr << "objective " << plan.objective << " over "
                  << instance.horizon() << " customers\n";
      };
    });
  }

  // solve-apvc
  auto* apvc_cmd = app.add_subcommand(
      "solve-apvc", "cardinality-capped planning (equal prices)");
  {
    auto file = std::make_shared<std::string>();
    auto epsilon = std::make_shared<double>(0.5);
    auto seed = std::make_shared<std::optional<std::uint64_t>>();
    auto reps = std::make_shared<int>(20);
    auto budget = std::make_shared<std::uint64_t>(kDefaultGuessBudget);
    auto oracle = std::make_shared<bool>(false);
    auto csv = std::make_shared<bool>(false);
    apvc_cmd->add_option("--instance", *file, "instance JSON file")->required();
    apvc_cmd->add_option("--epsilon", *epsilon, "accuracy parameter in (0,1)")
        ->required();
    apvc_cmd->add_option("--seed", *seed, "rounding seed");
    apvc_cmd->add_option("--reps", *reps, "roundings per guess");
    apvc_cmd->add_option("--guess-budget", *budget, "max guesses");
    apvc_cmd->add_flag("--oracle", *oracle, "also run the brute-force oracle");
    apvc_cmd->add_flag("--csv", *csv, "emit per-customer rows instead");
    apvc_cmd->callback([=, &action]() {
      action = [=]() {
        const Instance instance = load_instance(*file);
        PtasOptions options;
        options.epsilon = *epsilon;
        options.seed = resolve_seed(*seed);
        options.repetitions = *reps;
        options.guess_budget = *budget;
        const Plan plan = solve_apvc_ptas(instance, options);
        json doc;
        doc["command"] = "solve-apvc";
        doc["epsilon"] = options.epsilon;
        doc["seed"] = options.seed;
        doc["reps"] = options.repetitions;
        doc["objective"] = plan.objective;
        doc["sales_objective"] = sales_objective(instance, plan);
        doc["assortments"] = plan_to_json(plan);
        if (*oracle) {
          const Plan exact = brute_force_apvc(instance);
          doc["oracle_objective"] = exact.objective;
          doc["oracle_sales_objective"] = sales_objective(instance, exact);
        }
        emit(doc, *csv, &plan);
        std::cerr << "objective " << plan.objective << " (sales "
                  << sales_objective(instance, plan) << ")\n";
      };
    });
  }

  // fees
  auto* fees_cmd = app.add_subcommand("fees", "visibility fee attribution");
  {
    auto file = std::make_shared<std::string>();
    auto what_if = std::make_shared<std::optional<int>>();
    fees_cmd->add_option("--instance", *file, "instance JSON file")->required();
    fees_cmd->add_option("--what-if", *what_if,
                         "fee after raising this product's floor by one");
    fees_cmd->callback([=, &action]() {
      action = [=]() {
        const Instance instance = load_instance(*file);
        const FeeReport report = fee_report(instance);
        json doc;
        doc["command"] = "fees";
        doc["unconstrained_value"] = report.unconstrained_value;
        doc["constrained_value"] = report.constrained_value;
        doc["delta"] = report.delta;
        doc["contributions"] = report.contributions;
        doc["fees"] = report.fees;
        if (!report.warning.empty()) doc["warning"] = report.warning;
        if (what_if->has_value()) {
          const int product = **what_if;
          doc["what_if"] = {{"product", product},
                            {"fee_before", report.fees.at(product)},
                            {"fee_after", fee_increment(instance, product)}};
        }
        emit(doc, false, nullptr);
        std::cerr << "loss " << report.delta << '\n';
        for (int i = 0; i < instance.num_products(); ++i) {
          std::cerr << "  product " << i << ": price " << instance.price(i)
                    << " weight " << instance.weight(i) << " floor "
                    << instance.visibility_of(i) << " contribution "
                    << report.contributions[i] << " fee " << report.fees[i]
                    << '\n';
        }
        if (!report.warning.empty()) {
          std::cerr << "warning: " << report.warning << '\n';
        }
      };
    });
  }

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "write an instance file");
  {
    auto kind = std::make_shared<std::string>("random");
    auto n = std::make_shared<int>(5);
    auto horizon = std::make_shared<int>(3);
    auto seed = std::make_shared<std::optional<std::uint64_t>>();
    auto price_mode = std::make_shared<std::string>("general");
    auto cap = std::make_shared<std::optional<int>>();
    auto values = std::make_shared<std::vector<long long>>();
    auto out = std::make_shared<std::string>("-");
    gen_cmd->add_option("--kind", *kind, "random or gadget")
        ->check(CLI::IsMember({"random", "gadget"}));
    gen_cmd->add_option("--n", *n, "number of products (random)");
    gen_cmd->add_option("--T", *horizon, "number of customers (random)");
    gen_cmd->add_option("--seed", *seed, "generator seed");
    gen_cmd->add_option("--price-mode", *price_mode, "general or equal")
        ->check(CLI::IsMember({"general", "equal"}));
    gen_cmd->add_option("--k", *cap, "cardinality cap (random)");
    gen_cmd->add_option("--values", *values,
                        "comma-separated integers (gadget)")
        ->delimiter(',');
    gen_cmd->add_option("--out", *out, "output path, - for stdout");
    gen_cmd->callback([=, &action]() {
      action = [=]() {
        Instance instance =
            *kind == "gadget"
                ? gen_3partition(*values)
                : gen_random(*n, *horizon, resolve_seed(*seed),
                             *price_mode == "equal" ? PriceMode::equal
                                                    : PriceMode::general,
                             *cap);
        if (*out == "-") {
          std::cout << instance_to_json(instance).dump(2) << '\n';
        } else {
          save_instance(instance, *out);
          std::cerr << "wrote " << *out << '\n';
        }
      };
    });
  }

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "cross-check solvers on an instance");
  {
    auto file = std::make_shared<std::string>();
    verify_cmd->add_option("--instance", *file, "instance JSON file")
        ->required();
    verify_cmd->callback([=, &action]() {
      action = [=]() {
        const Instance instance = load_instance(*file);
        const std::vector<VerifyCheck> checks = run_verify(instance);
        bool all = true;
        json arr = json::array();
        for (const VerifyCheck& c : checks) {
          all = all && c.passed;
          json entry = {{"name", c.name}, {"passed", c.passed}};
          if (!c.detail.empty()) entry["detail"] = c.detail;
          arr.push_back(entry);
          std::cerr << (c.passed ? "  ok  " : " FAIL ") << c.name
                    << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
        }
        json doc;
        doc["command"] = "verify";
        doc["checks"] = arr;
        doc["all_passed"] = all;
        emit(doc, false, nullptr);
        std::cerr << (all ? "all checks passed" : "some checks FAILED") << '\n';
        if (!all) std::exit(1);
      };
    });
  }

  CLI11_PARSE(app, argc, argv);
  try {
    action();
  } catch (const Error& e) {
    json err;
    err["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    std::cout << err.dump(2) << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"code", "internal"}, {"message", e.what()}};
    std::cout << err.dump(2) << '\n';
    return 1;
  }
  return 0;
}
