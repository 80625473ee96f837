#pragma once

#include "lebmaps/kernels.hpp"

namespace lebmaps::kernels::detail {

extern const KernelTable kScalarTable;
#if defined(LEBMAPS_WITH_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace lebmaps::kernels::detail
