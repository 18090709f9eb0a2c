#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "jladder/integrate.hpp"
#include "jladder/zeta.hpp"

namespace jladder {

namespace {

using json = nlohmann::json;

std::string now_iso() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool is_canonical(double t, std::size_t& k) {
  const double q = t / HlStore::kCheckpointStep;
  const double r = std::nearbyint(q);
  if (r * HlStore::kCheckpointStep != t) return false;
  k = static_cast<std::size_t>(r);
  return true;
}

// Persist every this many freshly computed segments.
constexpr std::size_t kSaveEvery = 50;

}  // namespace

HlStore::HlStore(std::filesystem::path dir, double tol) : dir_(std::move(dir)), tol_(tol) {
  if (!(tol >= 1e-12 && tol <= 1e-2)) throw std::invalid_argument("HlStore: bad tolerance");
  canon_ = {0.0};
  canon_err_ = {0.0};
  if (!dir_.empty()) {
    std::filesystem::create_directories(dir_);
    path_ = dir_ / kFileName;
    load();
  }
}

void HlStore::load() {
  std::ifstream in(path_);
  if (!in) return;
  try {
    const json j = json::parse(in);
    if (j.at("version").get<int>() != CumulativeIntegral::kVersion)
      throw std::runtime_error("unsupported version");
    if (j.at("tol").get<double>() != tol_) throw std::runtime_error("tolerance mismatch");
    const auto grid = j.at("grid").get<std::vector<double>>();
    const auto values = j.at("values").get<std::vector<double>>();
    const auto err = j.at("err").get<std::vector<double>>();
    if (grid.empty() || grid.size() != values.size() || grid.size() != err.size())
      throw std::runtime_error("array length mismatch");
    if (grid[0] != 0.0 || values[0] != 0.0) throw std::runtime_error("missing origin");
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(grid[i] > grid[i - 1]) || !(values[i] > values[i - 1]) || !(err[i] >= 0.0))
        throw std::runtime_error("grid or values not increasing");
    }
    std::vector<double> canon{0.0}, canon_err{0.0};
    std::vector<std::pair<double, std::pair<double, double>>> extra;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      std::size_t k = 0;
      if (is_canonical(grid[i], k)) {
        if (k != canon.size()) throw std::runtime_error("gap in canonical checkpoints");
        canon.push_back(values[i]);
        canon_err.push_back(err[i]);
      } else {
        extra.push_back({grid[i], {values[i], err[i]}});
      }
    }
    canon_ = std::move(canon);
    canon_err_ = std::move(canon_err);
    extra_ = std::move(extra);
  } catch (const std::exception& e) {
    load_warning_ = std::string("checkpoint ") + path_.string() +
                    " rejected (" + e.what() + "); rebuilding from scratch";
    std::cerr << "warning: " << load_warning_ << "\n";
    canon_ = {0.0};
    canon_err_ = {0.0};
    extra_.clear();
  }
}

void HlStore::save_locked() const {
  if (path_.empty()) return;
  const CumulativeIntegral ci = [&] {
    CumulativeIntegral c;
    std::size_t e = 0;
    for (std::size_t k = 0; k < canon_.size(); ++k) {
      const double t = double(k) * kCheckpointStep;
      while (e < extra_.size() && extra_[e].first < t) {
        c.grid.push_back(extra_[e].first);
        c.values.push_back(extra_[e].second.first);
        c.err.push_back(extra_[e].second.second);
        ++e;
      }
      c.grid.push_back(t);
      c.values.push_back(canon_[k]);
      c.err.push_back(canon_err_[k]);
    }
    for (; e < extra_.size(); ++e) {
      c.grid.push_back(extra_[e].first);
      c.values.push_back(extra_[e].second.first);
      c.err.push_back(extra_[e].second.second);
    }
    return c;
  }();
  json j;
  j["version"] = CumulativeIntegral::kVersion;
  j["tol"] = tol_;
  j["grid"] = ci.grid;
  j["values"] = ci.values;
  j["err"] = ci.err;
  j["meta"] = {{"corrections", ci.corrections},
               {"rs_threshold", kRiemannSiegelThreshold},
               {"checkpoint_step", kCheckpointStep},
               {"built", now_iso()}};
  const auto tmp = std::filesystem::path(path_.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump();
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

void HlStore::ensure_locked(std::size_t k) {
  while (canon_.size() <= k) {
    const std::size_t first = canon_.size() - 1;
    const std::size_t count = std::min(kSaveEvery, k + 1 - canon_.size());
    std::vector<QuadResult> seg(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
      const double a = double(first + i) * kCheckpointStep;
      seg[i] = integrate_adaptive(abs_zeta_sq, a, a + kCheckpointStep, tol_, z_panels());
    }
    for (std::size_t i = 0; i < count; ++i) {
      canon_.push_back(canon_.back() + seg[i].value);
      canon_err_.push_back(canon_err_.back() + seg[i].err_est);
    }
    save_locked();
  }
}

void HlStore::ensure(double T) {
  if (!(T >= 0.0)) throw DomainError("HlStore::ensure: T must be >= 0");
  std::lock_guard lock(mu_);
  ensure_locked(static_cast<std::size_t>(std::floor(T / kCheckpointStep)));
}

double HlStore::value_locked(double T) {
  if (!(T >= 0.0)) throw DomainError("cumulative_hl: T must be >= 0");
  const auto k = static_cast<std::size_t>(std::floor(T / kCheckpointStep));
  ensure_locked(k);
  const double base_t = double(k) * kCheckpointStep;
  if (T == base_t) return canon_[k];
  const QuadResult tail = integrate_adaptive(abs_zeta_sq, base_t, T, tol_, z_panels());
  return canon_[k] + tail.value;
}

double HlStore::value_at(double T) {
  std::lock_guard lock(mu_);
  return value_locked(T);
}

double HlStore::cumulative_hl(double T) {
  std::lock_guard lock(mu_);
  const double v = value_locked(T);
  std::size_t k = 0;
  if (!is_canonical(T, k)) {
    auto it = std::lower_bound(extra_.begin(), extra_.end(), T,
                               [](const auto& e, double x) { return e.first < x; });
    if (it == extra_.end() || it->first != T) {
      const auto kk = static_cast<std::size_t>(std::floor(T / kCheckpointStep));
      const double err = canon_err_[kk] + tol_ * (v - canon_[kk]);
      extra_.insert(it, {T, {v, err}});
      save_locked();
    }
  }
  return v;
}

CumulativeIntegral HlStore::snapshot() const {
  std::lock_guard lock(mu_);
  CumulativeIntegral c;
  c.tol = tol_;
  for (std::size_t k = 0; k < canon_.size(); ++k) {
    c.grid.push_back(double(k) * kCheckpointStep);
    c.values.push_back(canon_[k]);
    c.err.push_back(canon_err_[k]);
  }
  for (const auto& e : extra_) {
    auto it = std::lower_bound(c.grid.begin(), c.grid.end(), e.first);
    const auto pos = it - c.grid.begin();
    c.grid.insert(it, e.first);
    c.values.insert(c.values.begin() + pos, e.second.first);
    c.err.insert(c.err.begin() + pos, e.second.second);
  }
  return c;
}

}  // namespace jladder
