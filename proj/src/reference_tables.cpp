#include <array>

#include "szd/report.hpp"

namespace szd {

namespace {

// reference abs_error values, six significant digits
constexpr std::array<ReferenceCell, 147> kCells = {{
    {1, 0.1, 10, 0.202522}, {1, 0.1, 50, 0.0156053}, {1, 0.1, 100, 0.0069326}, {1, 0.1, 200, 0.00326665}, {1, 0.1, 250, 0.00258244}, {1, 0.1, 500, 0.00126086}, {1, 0.1, 1000, 0.000622967},
    {1, 0.5, 10, 3.82396}, {1, 0.5, 50, 0.325365}, {1, 0.5, 100, 0.148479}, {1, 0.5, 200, 0.0710035}, {1, 0.5, 250, 0.0563036}, {1, 0.5, 500, 0.0276615}, {1, 0.5, 1000, 0.0137104},
    {1, 0.9, 10, 27.2622}, {1, 0.9, 50, 2.13631}, {1, 0.9, 100, 0.969982}, {1, 0.9, 200, 0.462837}, {1, 0.9, 250, 0.366865}, {1, 0.9, 500, 0.180094}, {1, 0.9, 1000, 0.0892291},
    {1, 1.0, 10, 42.1618}, {1, 1.0, 50, 3.22439}, {1, 1.0, 100, 1.46137}, {1, 1.0, 200, 0.696735}, {1, 1.0, 250, 0.552174}, {1, 1.0, 500, 0.270979}, {1, 1.0, 1000, 0.134238},
    {1, 1.5, 10, 310.724}, {1, 1.5, 50, 20.8491}, {1, 1.5, 100, 9.3538}, {1, 1.5, 200, 4.43876}, {1, 1.5, 250, 3.51461}, {1, 1.5, 500, 1.72172}, {1, 1.5, 1000, 0.852162},
    {1, 2.0, 10, 1888.96}, {1, 2.0, 50, 110.236}, {1, 2.0, 100, 48.9145}, {1, 2.0, 200, 23.0939}, {1, 2.0, 250, 18.2677}, {1, 2.0, 500, 8.93151}, {1, 2.0, 1000, 4.4164},
    {1, 2.5, 10, 10237.6}, {1, 2.5, 50, 516.742}, {1, 2.5, 100, 226.689}, {1, 2.5, 200, 106.464}, {1, 2.5, 250, 84.1292}, {1, 2.5, 500, 41.0503}, {1, 2.5, 1000, 20.2783},
    {2, 0.1, 10, 0.0282979}, {2, 0.1, 50, 0.0018008}, {2, 0.1, 100, 0.000622967}, {2, 0.1, 200, 0.000218562}, {2, 0.1, 250, 0.000156203}, {2, 0.1, 500, 5.51185e-05}, {2, 0.1, 1000, 1.94739e-05},
    {2, 0.5, 10, 0.574288}, {2, 0.5, 50, 0.0394044}, {2, 0.5, 100, 0.0137104}, {2, 0.5, 200, 0.0048201}, {2, 0.5, 250, 0.00344596}, {2, 0.5, 500, 0.0012166}, {2, 0.5, 1000, 0.000429916},
    {2, 0.9, 10, 3.79761}, {2, 0.9, 50, 0.256632}, {2, 0.9, 100, 0.0892291}, {2, 0.9, 200, 0.0313623}, {2, 0.9, 250, 0.0224205}, {2, 0.9, 500, 0.00791509}, {2, 0.9, 1000, 0.00279694},
    {2, 1.0, 10, 5.74555}, {2, 1.0, 50, 0.386191}, {2, 1.0, 100, 0.134238}, {2, 1.0, 200, 0.0471774}, {2, 1.0, 250, 0.033726}, {2, 1.0, 500, 0.011906}, {2, 1.0, 1000, 0.00420715},
    {2, 1.5, 10, 37.6466}, {2, 1.5, 50, 2.45554}, {2, 1.5, 100, 0.852162}, {2, 1.5, 200, 0.299321}, {2, 1.5, 250, 0.213959}, {2, 1.5, 500, 0.0755213}, {2, 1.5, 1000, 0.0266852},
    {2, 2.0, 10, 201.92}, {2, 2.0, 50, 12.7484}, {2, 2.0, 100, 4.4164}, {2, 2.0, 200, 1.55031}, {2, 2.0, 250, 1.10808}, {2, 2.0, 500, 0.391058}, {2, 2.0, 1000, 0.138172},
    {2, 2.5, 10, 960.667}, {2, 2.5, 50, 58.6418}, {2, 2.5, 100, 20.2783}, {2, 2.5, 200, 7.11386}, {2, 2.5, 250, 5.08411}, {2, 2.5, 500, 1.79398}, {2, 2.5, 1000, 0.633827},
    {3, 0.1, 10, 0.0069326}, {3, 0.1, 50, 0.000247412}, {3, 0.1, 100, 6.16321e-05}, {3, 0.1, 200, 1.53943e-05}, {3, 0.1, 250, 9.85127e-06}, {3, 0.1, 500, 2.462477e-06}, {3, 0.1, 1000, 6.15594e-07},
    {3, 0.5, 10, 0.148479}, {3, 0.5, 50, 0.00545553}, {3, 0.5, 100, 0.00136032}, {3, 0.5, 200, 0.000339859}, {3, 0.5, 250, 0.000217493}, {3, 0.5, 500, 5.43675e-05}, {3, 0.5, 1000, 1.35915e-05},
    {3, 0.9, 10, 0.969982}, {3, 0.9, 50, 0.0354973}, {3, 0.9, 100, 0.00885019}, {3, 0.9, 200, 0.00221104}, {3, 0.9, 250, 0.00141495}, {3, 0.9, 500, 0.000353699}, {3, 0.9, 1000, 8.84224e-05},
    {3, 1.0, 10, 1.46137}, {3, 1.0, 50, 0.053398}, {3, 1.0, 100, 0.0133126}, {3, 1.0, 200, 0.00332584}, {3, 1.0, 250, 0.00212836}, {3, 1.0, 500, 0.000532032}, {3, 1.0, 1000, 0.000133004},
    {3, 1.5, 10, 9.3538}, {3, 1.5, 50, 0.338802}, {3, 1.5, 100, 0.0844444}, {3, 1.5, 200, 0.0210951}, {3, 1.5, 250, 0.0134997}, {3, 1.5, 500, 0.00337451}, {3, 1.5, 1000, 0.000843601},
    {3, 2.0, 10, 48.9145}, {3, 2.0, 50, 1.75487}, {3, 2.0, 100, 0.437267}, {3, 2.0, 200, 0.109226}, {3, 2.0, 250, 0.069898}, {3, 2.0, 500, 0.0174722}, {3, 2.0, 1000, 0.0043679},
    {3, 2.5, 10, 226.689}, {3, 2.5, 50, 8.0529}, {3, 2.5, 100, 2.00598}, {3, 2.5, 200, 0.501045}, {3, 2.5, 250, 0.320634}, {3, 2.5, 500, 0.080147}, {3, 2.5, 1000, 0.020036},
}};

}  // namespace

std::span<const ReferenceCell> reference_cells() { return kCells; }

}  // namespace szd
