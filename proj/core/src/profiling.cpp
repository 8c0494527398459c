#include "profbench/profiling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "profbench/catalog.hpp"
#include "profbench/csv.hpp"
#include "profbench/errors.hpp"
#include "profbench/interactions.hpp"
#include "profbench/table.hpp"

namespace profbench {

std::string_view to_string(ProfileMethod method) {
  switch (method) {
    case ProfileMethod::zhang: return "zhang";
    case ProfileMethod::li: return "li";
    case ProfileMethod::symeonidis: return "symeonidis";
    case ProfileMethod::tfidf: return "tfidf";
  }
  return "unknown";
}

std::optional<ProfileMethod> parse_profile_method(std::string_view token) {
  for (auto method : kAllProfileMethods) {
    if (to_string(method) == token) return method;
  }
  if (token == "tf-idf") return ProfileMethod::tfidf;
  return std::nullopt;
}

LogBase::LogBase(double base) {
  if (!(base > 0.0) || base == 1.0 || !std::isfinite(base)) {
    throw std::invalid_argument("log base must be positive and different from 1");
  }
  base_ = base;
  inv_ln_base_ = 1.0 / std::log(base);
}

double LogBase::operator()(double x) const {
  if (!base_) return std::log(x);
  if (*base_ == 2.0) return std::log2(x);
  if (*base_ == 10.0) return std::log10(x);
  return std::log(x) * inv_ln_base_;
}

std::string LogBase::name() const {
  if (!base_) return "e";
  return format_weight(*base_);
}

LogBase parse_log_base(std::string_view token) {
  if (token == "e" || token == "ln" || token == "natural") return LogBase{};
  double base = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), base);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw std::invalid_argument("log base must be 'e' or a number, got '" + std::string(token) + "'");
  }
  return LogBase(base);
}

ProfileContext::ProfileContext(const Dataset& dataset, const Catalog& catalog, AttributeType type,
                               LogBase log_base)
    : catalog_(&catalog), type_(type), log_(log_base) {
  for (const auto& user : dataset.users()) {
    UserCounts counts;
    for (const auto& fav : dataset.favourites_of(user.id)) {
      if (fav.kind != TargetKind::item) continue;
      const Item* item = catalog.find_item(fav.target_id);
      if (item == nullptr) {
        ++unresolved_skipped_;
        continue;
      }
      ++counts.rated_items;
      for (const auto& fid : item->features) {
        if (catalog.find_feature(fid)->type == type) ++counts.occurrences[fid];
      }
    }
    for (const auto& [fid, n] : counts.occurrences) ++user_frequency_[fid];
    users_.emplace(user.id, std::move(counts));
  }
  for (const auto& [fid, uf] : user_frequency_) document_frequency_.emplace(fid, catalog.document_frequency(fid));
}

std::size_t ProfileContext::item_count() const noexcept { return catalog_->item_count(); }

const ProfileContext::UserCounts& ProfileContext::counts(std::string_view user_id) const {
  static const UserCounts kEmpty{};
  auto it = users_.find(user_id);
  return it == users_.end() ? kEmpty : it->second;
}

std::size_t ProfileContext::occurrences(std::string_view user_id, std::string_view feature_id) const {
  const auto& occ = counts(user_id).occurrences;
  auto it = occ.find(feature_id);
  return it == occ.end() ? 0 : it->second;
}

std::size_t ProfileContext::user_frequency(std::string_view feature_id) const {
  auto it = user_frequency_.find(feature_id);
  return it == user_frequency_.end() ? 0 : it->second;
}

std::optional<std::size_t> ProfileContext::document_frequency(std::string_view feature_id) const {
  if (auto it = document_frequency_.find(feature_id); it != document_frequency_.end()) return it->second;
  if (catalog_->find_feature(feature_id) == nullptr) return std::nullopt;
  return catalog_->document_frequency(feature_id);
}

std::vector<std::string> ProfileContext::user_ids() const {
  std::vector<std::string> ids;
  ids.reserve(users_.size());
  for (const auto& [id, counts] : users_) ids.push_back(id);
  return ids;
}

namespace {

UserProfile empty_profile(std::string_view user_id, AttributeType type,
                          std::optional<ProfileMethod> method) {
  UserProfile p;
  p.user_id = std::string(user_id);
  p.attribute_type = type;
  p.method = method;
  return p;
}

void put_positive(UserProfile& p, const std::string& feature_id, double weight) {
  if (weight > 0.0) p.weights.emplace(feature_id, weight);
}

}  // namespace

UserProfile explicit_profile(std::string_view user_id, const Dataset& dataset, AttributeType type) {
  dataset.user(user_id);
  UserProfile p = empty_profile(user_id, type, std::nullopt);
  for (const auto& fav : dataset.favourites_of(user_id)) {
    if (fav.kind == TargetKind::feature && fav.attribute_type == type) p.weights.emplace(fav.target_id, 1.0);
  }
  return p;
}

UserProfile zhang_profile(std::string_view user_id, const ProfileContext& ctx) {
  UserProfile p = empty_profile(user_id, ctx.attribute_type(), ProfileMethod::zhang);
  for (const auto& [fid, n] : ctx.counts(user_id).occurrences) p.weights.emplace(fid, 1.0);
  return p;
}

UserProfile li_profile(std::string_view user_id, const ProfileContext& ctx) {
  UserProfile p = empty_profile(user_id, ctx.attribute_type(), ProfileMethod::li);
  const auto& counts = ctx.counts(user_id);
  if (counts.rated_items == 0) return p;
  const double m = static_cast<double>(counts.rated_items);
  for (const auto& [fid, n] : counts.occurrences) p.weights.emplace(fid, static_cast<double>(n) / m);
  return p;
}

UserProfile symeonidis_profile(std::string_view user_id, const ProfileContext& ctx) {
  UserProfile p = empty_profile(user_id, ctx.attribute_type(), ProfileMethod::symeonidis);
  const double users = static_cast<double>(ctx.user_count());
  for (const auto& [fid, ff] : ctx.counts(user_id).occurrences) {
    const auto uf = ctx.user_frequency(fid);
    if (uf == 0) continue;
    put_positive(p, fid, static_cast<double>(ff) * ctx.log_base()(users / static_cast<double>(uf)));
  }
  return p;
}

UserProfile tfidf_profile(std::string_view user_id, const ProfileContext& ctx) {
  UserProfile p = empty_profile(user_id, ctx.attribute_type(), ProfileMethod::tfidf);
  const double items = static_cast<double>(ctx.item_count());
  for (const auto& [fid, tf] : ctx.counts(user_id).occurrences) {
    const auto nf = ctx.document_frequency(fid);
    if (!nf || *nf == 0) continue;
    put_positive(p, fid, static_cast<double>(tf) * ctx.log_base()(items / static_cast<double>(*nf)));
  }
  return p;
}

UserProfile build_profile(ProfileMethod method, std::string_view user_id, const ProfileContext& ctx) {
  switch (method) {
    case ProfileMethod::zhang: return zhang_profile(user_id, ctx);
    case ProfileMethod::li: return li_profile(user_id, ctx);
    case ProfileMethod::symeonidis: return symeonidis_profile(user_id, ctx);
    case ProfileMethod::tfidf: return tfidf_profile(user_id, ctx);
  }
  throw std::invalid_argument("unknown profile method");
}

std::vector<ScoredItem> recommend_top_n(const UserProfile& profile, const Catalog& catalog, std::size_t n) {
  if (profile.empty()) throw UndefinedSimilarity("cannot recommend from an empty profile");
  if (n == 0) throw std::invalid_argument("n must be at least 1");

  double norm_sq = 0.0;
  for (const auto& [fid, w] : profile.weights) norm_sq += w * w;
  const double profile_norm = std::sqrt(norm_sq);

  std::vector<ScoredItem> scored;
  for (const auto& [id, item] : catalog.items()) {
    double dot = 0.0;
    std::size_t typed = 0;
    for (const auto& fid : item.features) {
      if (catalog.find_feature(fid)->type != profile.attribute_type) continue;
      ++typed;
      if (auto it = profile.weights.find(fid); it != profile.weights.end()) dot += it->second;
    }
    if (dot <= 0.0) continue;
    scored.push_back({id, dot / (profile_norm * std::sqrt(static_cast<double>(typed)))});
  }
  auto better = [](const ScoredItem& a, const ScoredItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.item_id < b.item_id;
  };
  if (n < scored.size()) {
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n), scored.end(), better);
    scored.resize(n);
  } else {
    std::sort(scored.begin(), scored.end(), better);
  }
  return scored;
}

void write_profiles(std::ostream& out, std::span<const UserProfile> profiles) {
  out << "user_id,attribute_type,origin,method,feature_id,weight\n";
  for (const auto& p : profiles) {
    const std::string origin = p.is_explicit() ? "explicit" : "implicit";
    const std::string method = p.method ? std::string(to_string(*p.method)) : "";
    for (const auto& [fid, w] : p.weights) {
      out << csv::join({p.user_id, std::string(to_string(p.attribute_type)), origin, method, fid,
                        format_weight(w)})
          << '\n';
    }
  }
}

}  // namespace profbench
