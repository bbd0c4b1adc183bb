#pragma once

#include "kframes/disk_geometry.hpp"
#include "kframes/kernels.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace kframes {

enum class Strategy { carleson_greedy, spectral_greedy };

std::string_view to_string(Strategy s) noexcept;

struct ClassCertificate {
  std::optional<double> carleson_inf;
  double lambda_min = 0.0;
  int size = 0;
};

struct Partition {
  Strategy strategy = Strategy::carleson_greedy;
  /// Each class lists input labels in the order they were admitted.
  std::vector<std::vector<int>> classes;
  std::vector<ClassCertificate> certificates;
  /// delta_target for carleson_greedy, c_target for spectral_greedy.
  double target = 0.0;

  std::size_t class_count() const noexcept { return classes.size(); }
  /// Every certificate meets the target.
  bool certified() const;
  /// Class index per input position, given the input label order.
  std::vector<int> class_of(std::span<const int> labels) const;
};

struct PartitionOptions {
  /// Consume points by ascending |z| instead of input order.
  bool presort_by_modulus = false;
};

/// First-fit greedy: a point joins the first class in which every member's
/// running product of pseudo-hyperbolic distances (and its own) stays at or
/// above delta_target. Certificates are recomputed with carleson_constants.
/// Throws DuplicatePoint, InvalidArgument (delta_target outside (0,1)).
Partition partition_carleson(const PointSequence& seq, double delta_target, PartitionOptions opts = {});

/// First-fit greedy on the Grammian: an index joins the first class whose
/// compressed Grammian keeps lambda_min >= c_target. Works for any
/// normalized Grammian, kernel structure is not used.
/// Throws TargetTooHigh (c_target > 1), InvalidArgument (c_target <= 0).
Partition partition_spectral(const Grammian& g, double c_target);

struct PartitionVerification {
  std::vector<double> lambda_min;
  bool all_pass = false;
};

/// Throws NotAPartition on overlap, gaps or foreign labels.
PartitionVerification verify_partition(const Grammian& g, const Partition& partition, double c);

}  // namespace kframes
