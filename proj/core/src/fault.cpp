#include "p3mod/fault.hpp"

#ifdef P3MOD_FAULT_INJECTION

#include <stdexcept>

namespace p3mod::fault {

namespace {
Kind g_active = Kind::kNone;
}

Kind active() { return g_active; }

void set_active(const std::string& name) {
  if (name.empty() || name == "none") g_active = Kind::kNone;
  else if (name == "collection-sign") g_active = Kind::kCollectionSign;
  else if (name == "qact-sign") g_active = Kind::kQActSign;
  else if (name == "kernel-drop") g_active = Kind::kKernelDrop;
  else throw std::invalid_argument("unknown fault: " + name);
}

const char* name(Kind k) {
  switch (k) {
    case Kind::kCollectionSign: return "collection-sign";
    case Kind::kQActSign: return "qact-sign";
    case Kind::kKernelDrop: return "kernel-drop";
    default: return "none";
  }
}

}  // namespace p3mod::fault

#endif
