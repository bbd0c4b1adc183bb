#include "kframes/partitioner.hpp"

#include "kframes/errors.hpp"
#include "kframes/frame_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace kframes {

std::string_view to_string(Strategy s) noexcept {
  return s == Strategy::carleson_greedy ? "carleson_greedy" : "spectral_greedy";
}

bool Partition::certified() const {
  for (const auto& c : certificates) {
    if (strategy == Strategy::carleson_greedy) {
      if (!c.carleson_inf || *c.carleson_inf < target) return false;
    } else if (c.lambda_min < target) {
      return false;
    }
  }
  return certificates.size() == classes.size();
}

std::vector<int> Partition::class_of(std::span<const int> labels) const {
  std::unordered_map<int, int> cls;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    for (int l : classes[k]) cls[l] = static_cast<int>(k);
  }
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    auto it = cls.find(l);
    out.push_back(it == cls.end() ? -1 : it->second);
  }
  return out;
}

namespace {

struct CarlesonClass {
  std::vector<std::size_t> members;  // positions in the input sequence
  std::vector<double> log_products;  // running log of prod over other members
};

}  // namespace

Partition partition_carleson(const PointSequence& seq, double delta_target, PartitionOptions opts) {
  if (!(delta_target > 0.0 && delta_target < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta_target must lie in (0, 1)");
  }
  require_distinct(seq);
  const double log_target = std::log(delta_target);

  std::vector<std::size_t> order(seq.size());
  std::iota(order.begin(), order.end(), 0);
  if (opts.presort_by_modulus) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return seq[a].modulus() < seq[b].modulus(); });
  }

  std::vector<CarlesonClass> classes;
  std::vector<double> logs;
  for (std::size_t j : order) {
    bool placed = false;
    for (auto& cls : classes) {
      logs.resize(cls.members.size());
      double own = 0.0;
      bool fits = true;
      for (std::size_t k = 0; k < cls.members.size(); ++k) {
        logs[k] = std::log(pseudo_hyperbolic(seq[cls.members[k]], seq[j]));
        own += logs[k];
        if (cls.log_products[k] + logs[k] < log_target) {
          fits = false;
          break;
        }
      }
      if (!fits || own < log_target) continue;
      for (std::size_t k = 0; k < cls.members.size(); ++k) cls.log_products[k] += logs[k];
      cls.members.push_back(j);
      cls.log_products.push_back(own);
      placed = true;
      break;
    }
    if (!placed) classes.push_back(CarlesonClass{{j}, {0.0}});
  }

  const Grammian full = szego_gram(seq);
  Partition out;
  out.strategy = Strategy::carleson_greedy;
  out.target = delta_target;
  for (const auto& cls : classes) {
    const PointSequence sub = seq.subset(cls.members);
    std::vector<int> labels = sub.labels();
    const auto report = carleson_constants(sub, delta_target);
    ClassCertificate cert;
    cert.carleson_inf = report.infimum;
    cert.lambda_min = lambda_min(compress(full, labels).matrix);
    cert.size = static_cast<int>(labels.size());
    out.classes.push_back(std::move(labels));
    out.certificates.push_back(cert);
  }
  return out;
}

Partition partition_spectral(const Grammian& g, double c_target) {
  if (c_target > 1.0) throw Error(ErrorCode::TargetTooHigh, "c_target above 1 is unreachable with unit diagonal");
  if (!(c_target > 0.0)) throw Error(ErrorCode::InvalidArgument, "c_target must be positive");

  std::vector<int> labels = g.provenance.labels;
  if (labels.empty()) {
    labels.resize(static_cast<std::size_t>(g.dim()));
    std::iota(labels.begin(), labels.end(), 0);
  }

  std::vector<std::vector<Eigen::Index>> classes;
  std::vector<double> certs;
  for (Eigen::Index j = 0; j < g.dim(); ++j) {
    bool placed = false;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      auto candidate = classes[k];
      candidate.push_back(j);
      const double lmin = lambda_min(principal_submatrix(g.matrix, candidate));
      if (lmin >= c_target) {
        classes[k] = std::move(candidate);
        certs[k] = lmin;
        placed = true;
        break;
      }
    }
    if (!placed) {
      classes.push_back({j});
      certs.push_back(g.matrix(j, j).real());
    }
  }

  Partition out;
  out.strategy = Strategy::spectral_greedy;
  out.target = c_target;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    std::vector<int> cls;
    for (auto p : classes[k]) cls.push_back(labels[static_cast<std::size_t>(p)]);
    out.certificates.push_back(ClassCertificate{std::nullopt, certs[k], static_cast<int>(cls.size())});
    out.classes.push_back(std::move(cls));
  }
  return out;
}

PartitionVerification verify_partition(const Grammian& g, const Partition& partition, double c) {
  std::vector<int> labels = g.provenance.labels;
  if (labels.empty()) {
    labels.resize(static_cast<std::size_t>(g.dim()));
    std::iota(labels.begin(), labels.end(), 0);
  }
  std::unordered_map<int, int> seen;
  for (int l : labels) seen.emplace(l, 0);
  for (const auto& cls : partition.classes) {
    if (cls.empty()) throw Error(ErrorCode::NotAPartition, "empty class");
    for (int l : cls) {
      auto it = seen.find(l);
      if (it == seen.end()) throw Error(ErrorCode::NotAPartition, "label " + std::to_string(l) + " not in Grammian");
      if (++it->second > 1) throw Error(ErrorCode::NotAPartition, "label " + std::to_string(l) + " in two classes");
    }
  }
  for (const auto& [l, count] : seen) {
    if (count == 0) throw Error(ErrorCode::NotAPartition, "label " + std::to_string(l) + " not covered");
  }

  PartitionVerification out;
  out.all_pass = true;
  for (const auto& cls : partition.classes) {
    const double lmin = lambda_min(compress(g, cls).matrix);
    out.lambda_min.push_back(lmin);
    out.all_pass = out.all_pass && lmin >= c;
  }
  return out;
}

}  // namespace kframes
