// Copyright 2026 The relay-dmt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relaydmt/kernels/dispatch.hpp"

#include <cstdlib>
#include <cstring>

namespace relaydmt::kernels {

const KernelTable& scalar_kernel_table();
const KernelTable& avx2_kernel_table();
bool avx2_supported();

bool arch_available(Arch arch) {
  switch (arch) {
    case Arch::scalar:
      return true;
    case Arch::avx2:
      return avx2_supported();
  }
  return false;
}

const KernelTable& table_for(Arch arch) {
  return arch == Arch::avx2 ? avx2_kernel_table() : scalar_kernel_table();
}

const char* arch_name(Arch arch) {
  return arch == Arch::avx2 ? "avx2" : "scalar";
}

namespace {

Arch select_arch() {
  if (const char* env = std::getenv("RELAY_DMT_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Arch::scalar;
    if (std::strcmp(env, "avx2") == 0 && arch_available(Arch::avx2)) {
      return Arch::avx2;
    }
    // Unknown value or unavailable arch: fall through to auto selection.
  }
  return arch_available(Arch::avx2) ? Arch::avx2 : Arch::scalar;
}

}  // namespace

Arch active_arch() {
  static const Arch arch = select_arch();
  return arch;
}

const KernelTable& table() { return table_for(active_arch()); }

}  // namespace relaydmt::kernels
