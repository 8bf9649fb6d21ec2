#pragma once

namespace stoqtim {

// Constants for the gap-selection formulas, fitted by tools/calibrate on
// small instances (see README). Bump the version whenever a value changes.
struct CalibrationTable {
  const char* version;
  double chain;           // degree-3: 1/delta >= K m J / (eps xi) (1 + 1/eta)
  double first_order;     // penalty-only steps
  double hcd_to_tim;      // second order
  double hcb2_to_hcd;     // third order
  double multiparticle;   // second order
  double hcb1_to_hcb2;    // second order
  double hcbstar_to_hcb1; // second order
  double stoqlh;          // third order
};

const CalibrationTable& calibration();

}  // namespace stoqtim
