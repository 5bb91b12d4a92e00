#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fracsh/error.hpp"

namespace fracsh {

enum class ClassId { I, II, III };

inline std::string_view to_string(ClassId id) {
  switch (id) {
    case ClassId::I: return "I";
    case ClassId::II: return "II";
    case ClassId::III: return "III";
  }
  return "?";
}

struct ParticleClass {
  ClassId id;
  std::string spins_covered;
};

// Class of spin s = 1/n, determined by n mod 4:
// 2 -> I (1/2, 1/6, ...), odd -> II (1/3, 1/5, ...), 0 -> III (1/4, 1/8, ...).
inline ParticleClass particle_class(std::int64_t n) {
  if (n < 2) throw DomainError("particle_class: n must be at least 2, got " + std::to_string(n));
  if (n % 2 == 1) return {ClassId::II, "s = 1/n, n odd: 1/3, 1/5, 1/7, ..."};
  if (n % 4 == 2) return {ClassId::I, "s = 1/n, n = 2 mod 4: 1/2, 1/6, 1/10, ..."};
  return {ClassId::III, "s = 1/n, n = 0 mod 4: 1/4, 1/8, 1/12, ..."};
}

}  // namespace fracsh
