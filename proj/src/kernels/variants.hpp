// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "irsuav/kernels.hpp"

namespace irsuav::kernels::detail {

extern const KernelTable scalar_table;
#if defined(IRSUAV_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif

}  // namespace irsuav::kernels::detail
