#include "oracle.hpp"

#include <cmath>
#include <set>

namespace profbench::testing::oracle {
namespace {

bool item_has(const MicroInstance& m, int item, int feature) {
  for (int f : m.item_features[static_cast<std::size_t>(item)]) {
    if (f == feature) return true;
  }
  return false;
}

int count_user_items_with(const MicroInstance& m, int user, int feature) {
  int n = 0;
  for (int i : m.user_items[static_cast<std::size_t>(user)]) n += item_has(m, i, feature) ? 1 : 0;
  return n;
}

double log_in(double x, std::optional<double> base) {
  return base ? std::log(x) / std::log(*base) : std::log(x);
}

}  // namespace

Weights profile(const MicroInstance& m, ProfileMethod method, int user, AttributeType type,
                std::optional<double> log_base) {
  Weights w;
  const int n_users = static_cast<int>(m.user_items.size());
  const int n_items = static_cast<int>(m.item_features.size());
  const auto m_u = static_cast<double>(m.user_items[static_cast<std::size_t>(user)].size());

  for (int f = 0; f < static_cast<int>(m.feature_types.size()); ++f) {
    if (m.feature_types[static_cast<std::size_t>(f)] != type) continue;
    const int n_uf = count_user_items_with(m, user, f);
    if (n_uf == 0) continue;
    double weight = 0.0;
    switch (method) {
      case ProfileMethod::zhang: weight = 1.0; break;
      case ProfileMethod::li: weight = n_uf / m_u; break;
      case ProfileMethod::symeonidis: {
        int uf = 0;
        for (int v = 0; v < n_users; ++v) uf += count_user_items_with(m, v, f) > 0 ? 1 : 0;
        weight = n_uf * log_in(static_cast<double>(n_users) / uf, log_base);
        break;
      }
      case ProfileMethod::tfidf: {
        int nf = 0;
        for (int i = 0; i < n_items; ++i) nf += item_has(m, i, f) ? 1 : 0;
        weight = n_uf * log_in(static_cast<double>(n_items) / nf, log_base);
        break;
      }
    }
    if (weight > 0.0) w[MicroInstance::feature_id(f)] = weight;
  }
  return w;
}

Weights explicit_weights(const MicroInstance& m, int user, AttributeType type) {
  Weights w;
  for (int f : m.user_explicit[static_cast<std::size_t>(user)]) {
    if (m.feature_types[static_cast<std::size_t>(f)] == type) w[MicroInstance::feature_id(f)] = 1.0;
  }
  return w;
}

std::optional<double> cosine(const Weights& a, const Weights& b) {
  if (a.empty() || b.empty()) return std::nullopt;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [f, x] : a) {
    na += x * x;
    auto it = b.find(f);
    if (it != b.end()) dot += x * it->second;
  }
  for (const auto& [f, y] : b) nb += y * y;
  return dot / std::sqrt(na * nb);
}

std::vector<std::string> top_k(const Weights& w, std::size_t k) {
  std::set<std::string> remaining;
  for (const auto& [f, x] : w) remaining.insert(f);
  std::vector<std::string> out;
  while (out.size() < k && !remaining.empty()) {
    double best = 0.0;
    for (const auto& f : remaining) best = std::max(best, w.at(f));
    for (const auto& f : remaining) {
      if (best - w.at(f) <= 1e-9 * best) {
        out.push_back(f);
        remaining.erase(f);
        break;
      }
    }
  }
  return out;
}

std::optional<double> jaccard_topk(const Weights& implicit_w, const Weights& explicit_w) {
  if (implicit_w.empty() || explicit_w.empty()) return std::nullopt;
  const auto top = top_k(implicit_w, explicit_w.size());
  std::set<std::string> a(top.begin(), top.end());
  std::set<std::string> b;
  for (const auto& [f, x] : explicit_w) b.insert(f);
  std::size_t inter = 0;
  for (const auto& f : a) inter += b.count(f);
  std::set<std::string> uni = a;
  uni.insert(b.begin(), b.end());
  return static_cast<double>(inter) / static_cast<double>(uni.size());
}

std::optional<double> mean_similarity(const MicroInstance& m, ProfileMethod method, AttributeType type,
                                      SimilarityMetric metric) {
  double sum = 0.0;
  int n = 0;
  for (int u = 0; u < static_cast<int>(m.user_items.size()); ++u) {
    const auto imp = profile(m, method, u, type);
    const auto exp = explicit_weights(m, u, type);
    const auto s = metric == SimilarityMetric::cosine ? cosine(imp, exp) : jaccard_topk(imp, exp);
    if (!s) continue;
    sum += *s;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

}  // namespace profbench::testing::oracle
