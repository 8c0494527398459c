#include "cli.hpp"

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "profbench/catalog.hpp"
#include "profbench/catalog_import.hpp"
#include "profbench/errors.hpp"
#include "profbench/http_server.hpp"
#include "profbench/interactions.hpp"
#include "profbench/profiling.hpp"
#include "profbench/service.hpp"
#include "profbench/similarity.hpp"
#include "profbench/stats.hpp"
#include "profbench/table.hpp"

namespace profbench::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string catalog;
  std::string users;
  std::string favourites;
  std::string trials;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 0;
  bool no_reliability_filter = false;
  double precision_threshold = 0.5;
  std::string log_base = "e";
  std::optional<std::size_t> min_items;
  std::optional<std::size_t> min_genres;
  std::optional<std::size_t> min_actors;
  std::optional<std::size_t> min_directors;
  bool crowd_requires_minimums = false;
};

struct EvaluateOptions {
  std::string methods = "zhang,li,symeonidis,tfidf";
  std::string types = "genre,actor,director";
  std::string metrics = "cosine,jaccard";
  std::string empty_profiles = "skip";
};

struct StatsOptions {
  std::string table = "overlap";
  std::string types = "genre,actor,director";
  std::string k;
  std::string gender = "male,female";
  std::string cohort;
};

struct ProfileOptions {
  std::string user;
  std::string method = "zhang";
  std::string type = "genre";
  std::size_t n = 10;
};

struct ServeOptions {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string cors_origin = "*";
  double decoy_ratio = 1.0;
};

struct ImportOptions {
  std::string movies;
  std::string credits;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, const char* what, Parse parse) {
  std::vector<T> out;
  for (const auto& token : split_list(text)) {
    auto value = parse(token);
    if (!value) throw UsageError(std::string("unknown ") + what + " '" + token + "'");
    out.push_back(*value);
  }
  if (out.empty()) throw UsageError(std::string("no ") + what + " given");
  return out;
}

AttributeType parse_type_or_usage(const std::string& token) {
  auto type = parse_attribute_type(token);
  if (!type) throw UsageError("unknown attribute type '" + token + "'");
  return *type;
}

/// Context shared by the data-driven commands.
class Workbench {
 public:
  explicit Workbench(const GlobalOptions& g) : global_(g) {
    auto format = parse_output_format(g.format);
    if (!format) throw UsageError("unknown output format '" + g.format + "'");
    format_ = *format;
    try {
      log_base_ = parse_log_base(g.log_base);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    policy_.precision_threshold = g.precision_threshold;
    if (g.min_items) policy_.minimums[std::nullopt] = *g.min_items;
    if (g.min_genres) policy_.minimums[AttributeType::genre] = *g.min_genres;
    if (g.min_actors) policy_.minimums[AttributeType::actor] = *g.min_actors;
    if (g.min_directors) policy_.minimums[AttributeType::director] = *g.min_directors;
    policy_.crowdsourced_requires_minimums = g.crowd_requires_minimums;
    try {
      policy_.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  void require_interactions() const {
    if (global_.catalog.empty()) throw UsageError("--catalog is required");
    if (global_.users.empty() || global_.favourites.empty()) {
      throw UsageError("--users and --favourites are required");
    }
  }

  void load_catalog_only() {
    if (global_.catalog.empty()) throw UsageError("--catalog is required");
    catalog_ = profbench::load_catalog(global_.catalog);
  }

  void load_all() {
    require_interactions();
    load_catalog_only();
    dataset_ = load_interactions({global_.users, global_.favourites, global_.trials}, catalog_);
  }

  /// Dataset the evaluation runs over: reliable users unless disabled.
  Dataset cohort_dataset() const {
    return global_.no_reliability_filter ? dataset_ : filter_reliable(dataset_, policy_);
  }

  const Catalog& catalog() const { return catalog_; }
  const Dataset& dataset() const { return dataset_; }
  const ReliabilityPolicy& policy() const { return policy_; }
  const LogBase& log_base() const { return log_base_; }
  OutputFormat format() const { return format_; }
  const GlobalOptions& global() const { return global_; }

 private:
  GlobalOptions global_;
  OutputFormat format_ = OutputFormat::csv;
  LogBase log_base_;
  ReliabilityPolicy policy_;
  Catalog catalog_;
  Dataset dataset_;
};

void emit(const GlobalOptions& g, const std::string& text, std::ostream& out) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write '" + g.out + "'");
  file << text;
  if (!file) throw Error("failed writing '" + g.out + "'");
}

std::string size_str(std::size_t n) { return std::to_string(n); }

int cmd_validate(const GlobalOptions& g, std::ostream& out) {
  Workbench wb(g);
  Table t{"validation", {"check", "value"}, {}};
  wb.load_catalog_only();
  const auto& c = wb.catalog();
  t.rows.push_back({"catalog_items", size_str(c.item_count())});
  t.rows.push_back({"catalog_features", size_str(c.features().size())});
  if (!g.users.empty() || !g.favourites.empty()) {
    wb.load_all();
    const auto& d = wb.dataset();
    t.rows.push_back({"users", size_str(d.users().size())});
    t.rows.push_back({"favourites", size_str(d.favourites().size())});
    t.rows.push_back({"duplicate_favourites_collapsed", size_str(d.duplicate_favourites())});
    t.rows.push_back({"unresolved_favourites", size_str(d.unresolved_favourites())});
    t.rows.push_back({"trials", size_str(d.trials().size())});
    for (const auto& note : d.provenance()) t.rows.push_back({"provenance", note});
  }
  emit(g, render(t, wb.format()), out);
  return kExitOk;
}

int cmd_evaluate(const GlobalOptions& g, const EvaluateOptions& o, std::ostream& out) {
  Workbench wb(g);
  EvaluationOptions options;
  options.methods = parse_list<ProfileMethod>(o.methods, "method", parse_profile_method);
  options.types = parse_list<AttributeType>(o.types, "attribute type", parse_attribute_type);
  options.metrics = parse_list<SimilarityMetric>(o.metrics, "metric", parse_similarity_metric);
  options.log_base = wb.log_base();
  if (o.empty_profiles == "skip") options.empty_profiles = EmptyProfilePolicy::skip;
  else if (o.empty_profiles == "zero") options.empty_profiles = EmptyProfilePolicy::zero;
  else throw UsageError("--empty-profiles must be skip or zero");

  wb.load_all();
  const auto report = evaluate(wb.cohort_dataset(), wb.catalog(), options);
  Table t{"average pairwise similarity",
          {"metric", "attribute_type", "method", "avg_similarity_pct", "users_included", "users_skipped"},
          {}};
  for (const auto& cell : report.cells) {
    t.rows.push_back({std::string(to_string(cell.metric)), std::string(to_string(cell.attribute_type)),
                      std::string(to_string(cell.method)), format_percent(cell.average),
                      size_str(cell.users_included), size_str(cell.users_skipped)});
  }
  emit(g, render(t, wb.format()), out);
  return kExitOk;
}

std::vector<std::size_t> parse_ks(const std::string& text, std::size_t all) {
  std::vector<std::size_t> ks;
  for (const auto& token : split_list(text)) {
    if (token == "all") {
      ks.push_back(all);
      continue;
    }
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoul(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError("k must be a positive integer or 'all', got '" + token + "'");
    }
    if (value == 0) throw UsageError("k must be at least 1");
    ks.push_back(value);
  }
  if (ks.empty()) throw UsageError("no k values given");
  return ks;
}

std::vector<Table> summary_tables(const Dataset& all, const ReliabilityPolicy& policy) {
  auto summarize = [&](const std::string& title, const Dataset& d) {
    const auto s = summary_stats(d, policy);
    Table t{title, {"statistic", "value"}, {}};
    t.rows.push_back({"users", size_str(s.users)});
    for (const auto& [k, v] : s.users_by_source) t.rows.push_back({"users_" + k, size_str(v)});
    for (const auto& [k, v] : s.users_by_gender) t.rows.push_back({"gender_" + k, size_str(v)});
    for (const auto& [k, v] : s.users_by_age) t.rows.push_back({"age_" + k, size_str(v)});
    for (const auto& [k, v] : s.users_by_country) t.rows.push_back({"country_" + k, size_str(v)});
    t.rows.push_back({"users_meeting_minimums", size_str(s.users_meeting_minimums)});
    t.rows.push_back({"reliable_users", size_str(s.reliable_users)});
    for (const auto& [k, v] : s.reliable_by_source) t.rows.push_back({"reliable_" + k, size_str(v)});
    t.rows.push_back({"favourites", size_str(s.favourites)});
    t.rows.push_back({"unique_favourites", size_str(s.unique_favourites)});
    t.rows.push_back({"favourite_items", size_str(s.item_favourites)});
    for (const auto& [k, v] : s.feature_favourites) t.rows.push_back({"favourite_" + k, size_str(v)});
    t.rows.push_back({"unresolved_favourites", size_str(s.unresolved_favourites)});
    return t;
  };
  return {summarize("all users", all), summarize("reliable users", filter_reliable(all, policy))};
}

int cmd_stats(const GlobalOptions& g, const StatsOptions& o, std::ostream& out) {
  Workbench wb(g);
  if (o.table != "overlap" && o.table != "gender-top" && o.table != "summary") {
    throw UsageError("--table must be overlap, gender-top or summary");
  }
  const auto types = parse_list<AttributeType>(o.types, "attribute type", parse_attribute_type);
  std::vector<std::optional<Gender>> genders;
  for (const auto& token : split_list(o.gender)) {
    if (token == "any") genders.push_back(std::nullopt);
    else if (token == "male") genders.push_back(Gender::male);
    else if (token == "female") genders.push_back(Gender::female);
    else throw UsageError("--gender must be male, female or any");
  }
  if (!o.cohort.empty() && o.cohort != "reliable" && o.cohort != "all") {
    throw UsageError("--cohort must be reliable or all");
  }
  if (!o.k.empty()) parse_ks(o.k, 1);

  wb.load_all();
  const auto& d = wb.dataset();
  std::vector<Table> tables;

  if (o.table == "summary") {
    tables = summary_tables(d, wb.policy());
  } else if (o.table == "overlap") {
    const bool reliable_only = o.cohort.empty() ? !g.no_reliability_filter : o.cohort == "reliable";
    const auto cohort = group_cohort(d, std::nullopt, reliable_only, wb.policy());
    if (cohort.empty()) throw Error("cohort is empty");
    Table t{"common features among the top-k explicit and implicit selections",
            {"attribute_type", "k", "common", "common_pct"},
            {}};
    for (const auto type : types) {
      const auto pop = feature_popularity(d, wb.catalog(), type, cohort);
      const std::string default_k = type == AttributeType::genre ? "5,10,15,all" : "10,20,40,60";
      for (const auto k : parse_ks(o.k.empty() ? default_k : o.k, std::max<std::size_t>(1, population_size(pop)))) {
        const auto row = common_at_k(pop, k);
        t.rows.push_back({std::string(to_string(type)), size_str(row.k), size_str(row.common),
                          format_percent(row.fraction)});
      }
    }
    tables.push_back(std::move(t));
  } else {
    const bool reliable_only = o.cohort == "reliable";
    const auto ks = parse_ks(o.k.empty() ? "5" : o.k, 1);
    if (ks.size() != 1) throw UsageError("gender-top takes a single k");
    for (const auto& gender : genders) {
      const auto cohort = group_cohort(d, gender, reliable_only, wb.policy());
      if (cohort.empty()) throw Error("cohort is empty");
      const std::string name = gender ? std::string(to_string(*gender)) : "any";
      Table t{"most selected features, " + name + " users",
              {"attribute_type", "position", "explicit_selection", "r_exp", "implicit_selection", "r_imp"},
              {}};
      for (const auto type : types) {
        const auto pop = feature_popularity(d, wb.catalog(), type, cohort);
        const auto exp = top_k(pop, RankMode::explicit_selection, ks.front());
        const auto imp = top_k(pop, RankMode::implicit_selection, ks.front());
        for (std::size_t i = 0; i < std::max(exp.size(), imp.size()); ++i) {
          std::vector<std::string> row{std::string(to_string(type)), size_str(i + 1), "", "", "", ""};
          if (i < exp.size()) {
            row[2] = exp[i].label;
            row[3] = size_str(exp[i].r_exp);
          }
          if (i < imp.size()) {
            row[4] = imp[i].label;
            row[5] = size_str(imp[i].r_imp);
          }
          t.rows.push_back(std::move(row));
        }
      }
      tables.push_back(std::move(t));
    }
  }
  emit(g, render(tables, wb.format()), out);
  return kExitOk;
}

struct ResolvedProfileRequest {
  std::optional<ProfileMethod> method;
  AttributeType type;
};

ResolvedProfileRequest resolve_profile_request(const ProfileOptions& o) {
  ResolvedProfileRequest r{std::nullopt, parse_type_or_usage(o.type)};
  if (o.method != "explicit") {
    r.method = parse_profile_method(o.method);
    if (!r.method) throw UsageError("unknown method '" + o.method + "'");
  }
  return r;
}

UserProfile profile_for(const Workbench& wb, const Dataset& cohort, const std::string& user,
                        const ResolvedProfileRequest& r) {
  if (!cohort.has_user(user)) {
    if (wb.dataset().has_user(user)) {
      throw NotFoundError("user '" + user + "' is not in the evaluation cohort (see --no-reliability-filter)");
    }
    throw NotFoundError("unknown user '" + user + "'");
  }
  if (!r.method) return explicit_profile(user, cohort, r.type);
  const ProfileContext ctx(cohort, wb.catalog(), r.type, wb.log_base());
  return build_profile(*r.method, user, ctx);
}

int cmd_profile(const GlobalOptions& g, const ProfileOptions& o, std::ostream& out) {
  Workbench wb(g);
  const auto request = resolve_profile_request(o);
  wb.load_all();
  const auto cohort = wb.cohort_dataset();

  std::vector<UserProfile> profiles;
  if (o.user.empty()) {
    std::optional<ProfileContext> ctx;
    if (request.method) ctx.emplace(cohort, wb.catalog(), request.type, wb.log_base());
    for (const auto& u : cohort.users()) {
      profiles.push_back(request.method ? build_profile(*request.method, u.id, *ctx)
                                        : explicit_profile(u.id, cohort, request.type));
    }
  } else {
    profiles.push_back(profile_for(wb, cohort, o.user, request));
  }

  if (wb.format() == OutputFormat::csv) {
    std::ostringstream text;
    write_profiles(text, profiles);
    emit(g, text.str(), out);
    return kExitOk;
  }
  Table t{"profiles", {"user_id", "attribute_type", "origin", "method", "feature_id", "weight"}, {}};
  for (const auto& p : profiles) {
    for (const auto& [fid, w] : p.weights) {
      t.rows.push_back({p.user_id, std::string(to_string(p.attribute_type)), p.is_explicit() ? "explicit" : "implicit",
                        p.method ? std::string(to_string(*p.method)) : "", fid, format_weight(w)});
    }
  }
  emit(g, render(t, wb.format()), out);
  return kExitOk;
}

int cmd_recommend(const GlobalOptions& g, const ProfileOptions& o, std::ostream& out) {
  Workbench wb(g);
  const auto request = resolve_profile_request(o);
  if (o.user.empty()) throw UsageError("--user is required");
  if (o.n == 0) throw UsageError("--n must be at least 1");
  wb.load_all();
  const auto cohort = wb.cohort_dataset();
  const auto profile = profile_for(wb, cohort, o.user, request);
  if (profile.empty()) throw Error("profile of user '" + o.user + "' is empty; nothing to recommend");

  Table t{"recommendations for " + o.user, {"rank", "item_id", "title", "score"}, {}};
  std::size_t rank = 0;
  for (const auto& s : recommend_top_n(profile, wb.catalog(), o.n)) {
    t.rows.push_back({size_str(++rank), s.item_id, wb.catalog().find_item(s.item_id)->title, format_weight(s.score)});
  }
  emit(g, render(t, wb.format()), out);
  return kExitOk;
}

HttpServer* g_running_server = nullptr;

extern "C" void stop_server(int) {
  if (g_running_server) g_running_server->stop();
}

int cmd_serve(const GlobalOptions& g, const ServeOptions& o, std::ostream& out, std::ostream& err) {
  Workbench wb(g);
  if (o.port < 0 || o.port > 65535) throw UsageError("--port out of range");
  wb.load_catalog_only();

  ServiceConfig config;
  config.policy = wb.policy();
  config.output.users = g.users.empty() ? "collected/users.csv" : g.users;
  config.output.favourites = g.favourites.empty() ? "collected/favourites.csv" : g.favourites;
  config.output.trials = g.trials.empty() ? "collected/trials.csv" : g.trials;
  config.cors_origin = o.cors_origin;
  config.decoy_ratio = o.decoy_ratio;
  if (g.seed != 0) config.seed = g.seed;

  CollectionService service(wb.catalog(), config);
  HttpServer server(service);
  g_running_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  out << "serving on " << o.host << ":" << o.port << std::endl;
  const bool ok = server.listen(o.host, o.port);
  g_running_server = nullptr;
  if (!ok) {
    err << "error: could not listen on " << o.host << ":" << o.port << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

int cmd_import(const GlobalOptions& g, const ImportOptions& o, std::ostream& out, std::ostream& err) {
  if (o.movies.empty()) throw UsageError("--movies is required");
  ImportStats stats;
  const auto catalog = import_movies_dataset(o.movies, o.credits, &stats);
  std::ostringstream text;
  write_catalog(text, catalog);
  emit(g, text.str(), out);
  err << "imported " << catalog.item_count() << " items, " << catalog.features().size() << " features ("
      << stats.movies_skipped << " malformed rows skipped, " << stats.duplicate_movies << " duplicates, "
      << stats.relabelled_features << " labels disambiguated)\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Profile-evaluation workbench: implicit vs explicit user profiles", "profbench"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read key = value options from a file (flags override it)");

  GlobalOptions g;
  app.add_option("--catalog", g.catalog, "Catalog CSV");
  app.add_option("--users", g.users, "Users CSV");
  app.add_option("--favourites", g.favourites, "Favourites CSV");
  app.add_option("--trials", g.trials, "Consistency trials CSV");
  app.add_option("--format", g.format, "Output format: csv, markdown or json")->capture_default_str();
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--seed", g.seed, "Seed for randomized steps (service session ids and sheets)");
  app.add_flag("--no-reliability-filter", g.no_reliability_filter, "Use all users instead of reliable users");
  app.add_option("--precision-threshold", g.precision_threshold, "Minimum consistency precision for crowdsourced users")
      ->capture_default_str();
  app.add_option("--log-base", g.log_base, "Logarithm base for IUF/IDF weights (e, 2, 10, ...)")->capture_default_str();
  app.add_option("--min-items", g.min_items, "Minimum favourite items");
  app.add_option("--min-genres", g.min_genres, "Minimum favourite genres");
  app.add_option("--min-actors", g.min_actors, "Minimum favourite actors");
  app.add_option("--min-directors", g.min_directors, "Minimum favourite directors");
  app.add_flag("--crowd-requires-minimums", g.crowd_requires_minimums,
               "Crowdsourced users must also meet the favourite minimums");

  auto* validate = app.add_subcommand("validate", "Load all inputs and report integrity");

  EvaluateOptions eval_opts;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Average explicit/implicit profile similarity");
  evaluate_cmd->add_option("--methods", eval_opts.methods, "Comma-separated profiling methods")->capture_default_str();
  evaluate_cmd->add_option("--types", eval_opts.types, "Comma-separated attribute types")->capture_default_str();
  evaluate_cmd->add_option("--metrics", eval_opts.metrics, "Comma-separated metrics")->capture_default_str();
  evaluate_cmd->add_option("--empty-profiles", eval_opts.empty_profiles, "skip or zero")->capture_default_str();

  StatsOptions stats_opts;
  auto* stats_cmd = app.add_subcommand("stats", "Overlap, gender top-k and dataset summary tables");
  stats_cmd->add_option("--table", stats_opts.table, "overlap, gender-top or summary")->capture_default_str();
  stats_cmd->add_option("--type,--types", stats_opts.types, "Comma-separated attribute types")->capture_default_str();
  stats_cmd->add_option("--k", stats_opts.k, "Comma-separated k values; 'all' for the whole population");
  stats_cmd->add_option("--gender", stats_opts.gender, "male, female, any (comma-separated)")->capture_default_str();
  stats_cmd->add_option("--cohort", stats_opts.cohort, "reliable or all");

  ProfileOptions profile_opts;
  auto* profile_cmd = app.add_subcommand("profile", "Export user profiles");
  profile_cmd->add_option("--user", profile_opts.user, "User id (all cohort users when omitted)");
  profile_cmd->add_option("--method", profile_opts.method, "zhang, li, symeonidis, tfidf or explicit")
      ->capture_default_str();
  profile_cmd->add_option("--type", profile_opts.type, "Attribute type")->capture_default_str();

  ProfileOptions rec_opts;
  auto* recommend_cmd = app.add_subcommand("recommend", "Top-n items by profile/item cosine");
  recommend_cmd->add_option("--user", rec_opts.user, "User id")->required();
  recommend_cmd->add_option("--method", rec_opts.method, "zhang, li, symeonidis, tfidf or explicit")
      ->capture_default_str();
  recommend_cmd->add_option("--type", rec_opts.type, "Attribute type")->capture_default_str();
  recommend_cmd->add_option("--n", rec_opts.n, "Number of items")->capture_default_str();

  ServeOptions serve_opts;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON service for the collection UI");
  serve_cmd->add_option("--host", serve_opts.host)->capture_default_str();
  serve_cmd->add_option("--port", serve_opts.port)->capture_default_str();
  serve_cmd->add_option("--cors-origin", serve_opts.cors_origin)->capture_default_str();
  serve_cmd->add_option("--decoy-ratio", serve_opts.decoy_ratio, "Decoys per true favourite")->capture_default_str();

  ImportOptions import_opts;
  auto* import_cmd = app.add_subcommand("import-catalog", "Convert a Movies Dataset export to the catalog format");
  import_cmd->add_option("--movies", import_opts.movies, "movies_metadata.csv")->required();
  import_cmd->add_option("--credits", import_opts.credits, "credits.csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(g, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(g, eval_opts, out);
    if (stats_cmd->parsed()) return cmd_stats(g, stats_opts, out);
    if (profile_cmd->parsed()) return cmd_profile(g, profile_opts, out);
    if (recommend_cmd->parsed()) return cmd_recommend(g, rec_opts, out);
    if (serve_cmd->parsed()) return cmd_serve(g, serve_opts, out, err);
    if (import_cmd->parsed()) return cmd_import(g, import_opts, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace profbench::cli
