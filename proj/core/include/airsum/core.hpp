#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "airsum/grid_real.hpp"

namespace airsum {

// One transmitter's source alphabet: q levels, a distribution over them, and
// an affine pre-processing map level -> pre_offset + pre_spacing * level.
struct AlphabetSpec {
  int size = 2;
  std::vector<double> pmf;  // empty means uniform
  long long pre_offset = 0;
  long long pre_spacing = 1;

  double expected_level() const;
  double level_variance() const;
};

enum class SlotRole { information, guard };

struct DigitSlot {
  int base = 2;
  int guard_low = 0;   // reserved levels below the admissible digit range
  int guard_span = 0;  // total reserved levels at this position
  SlotRole role = SlotRole::information;

  int radix() const { return base + guard_span; }
  bool operator==(const DigitSlot&) const = default;
};

// Ordered digit schedule. Position m (1-based) has cumulative denominator
// D_m = radix_1 * ... * radix_m; denominators are computed on demand so that
// plans with tens of thousands of slots stay cheap to build.
struct DigitPlan {
  std::vector<DigitSlot> slots;

  int size() const { return static_cast<int>(slots.size()); }
  BigInt denominator(int m) const;  // D_m, 1-based, D_0 = 1
  BigInt full_denominator() const { return denominator(size()); }
  std::vector<int> information_slots() const;  // 0-based slot indices
  int information_count() const;
};

struct SystemConfig {
  int K = 1;
  std::vector<AlphabetSpec> alphabets;
  DigitPlan plan;
  double snr = 1.0;  // linear
  std::uint64_t master_seed = 0;
  std::uint64_t trials = 1;
};

// Size of the superimposed output alphabet: sum_k (q_k - 1) + 1.
int output_alphabet_size(const std::vector<AlphabetSpec>& alphabets);

DigitPlan make_unshielded_plan(int B, int M);
// Slot 1 keeps the bare base; every later slot reserves beta_bar levels below
// and above the admissible range.
DigitPlan make_fixed_guard_plan(int B, int M, int beta_bar);
// Progressive bases B, B+1, ... with dedicated guard slots at positions
// j(j+3)/2. Guard slots carry a fixed mid-range level.
DigitPlan make_variable_length_plan(int B, int mu);

// 1-based guard slot positions j(j+3)/2 <= mu.
std::vector<int> variable_guard_positions(int mu);

// Fixed level each transmitter contributes in a guard slot (value g/K where
// g = floor((radix-1)/2) centers the summed digit).
int guard_slot_level(const DigitSlot& slot);

enum class SchemeKind { unshielded, fixed_guard, variable_length };

struct SchemeSpec {
  SchemeKind kind = SchemeKind::unshielded;
  int length = 1;  // slot count; for variable_length this is mu
  int beta_bar = 1;
  std::optional<int> base;  // defaults to the output alphabet size
};

DigitPlan make_plan(const SchemeSpec& scheme, int L);

struct PlanViolation {
  int slot = 0;  // 1-based, 0 for plan-level problems
  std::string message;
};

// Reports the first violated structural constraint; never throws.
std::optional<PlanViolation> validate_plan(const DigitPlan& plan,
                                           const SystemConfig& config);

std::optional<std::string> validate_config(const SystemConfig& config);

const char* scheme_name(SchemeKind kind);

}  // namespace airsum
