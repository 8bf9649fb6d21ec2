#include "stoqtim/calibration.hpp"

namespace stoqtim {

const CalibrationTable& calibration() {
  static const CalibrationTable table{
      "fit-2026-10-16",
      0.00138,   // chain
      0.086,     // first_order
      0.0426,    // hcd_to_tim
      0.000107,  // hcb2_to_hcd
      0.502,     // multiparticle
      0.401,     // hcb1_to_hcb2
      0.1,       // hcbstar_to_hcb1
      0.000174,  // stoqlh
  };
  return table;
}

}  // namespace stoqtim
