#pragma once

#include "gesture/kernels.hpp"

namespace gesture::kernels::detail {

// Defined only in translation units built with the matching ISA flags.
const KernelTable* avx2_table_if_built();
const KernelTable* neon_table_if_built();

}  // namespace gesture::kernels::detail
