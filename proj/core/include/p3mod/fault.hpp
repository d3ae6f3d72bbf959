#pragma once

// Fault-injection hooks, compiled only into test builds (P3MOD_FAULT_INJECTION).
// Each named fault corrupts one engine-level computation so the verifier
// can be demonstrated to fail. In regular builds all hooks are constant
// false and compile away.

#include <string>

namespace p3mod::fault {

enum class Kind {
  kNone,
  kCollectionSign,  // '+' instead of '-' in the h_mul collection correction
  kQActSign,        // drop the orientation sign when a permutation flips a pair
  kKernelDrop,      // kernel_basis silently drops one basis vector
};

#ifdef P3MOD_FAULT_INJECTION

Kind active();
/// Select by name: "collection-sign", "qact-sign", "kernel-drop", "" (none).
/// Throws std::invalid_argument on unknown names.
void set_active(const std::string& name);
const char* name(Kind k);

inline bool on(Kind k) { return active() == k; }

#else

constexpr Kind active() { return Kind::kNone; }
constexpr bool on(Kind) { return false; }

#endif

}  // namespace p3mod::fault
