#pragma once

namespace casimir {

/// Selects the serial reference loop or the OpenMP kernel. Both reduce in
/// fixed index order, so results are bit-identical.
enum class Exec { serial, parallel };

}  // namespace casimir
