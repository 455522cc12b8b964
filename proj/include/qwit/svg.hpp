// Copyright 2026 The qwit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace qwit {

/// Renders a labeled heatmap (or a line plot when one axis is a single
/// point) of witness values on a rectangular grid. Convenience view of the
/// CSV, never the source of truth.
std::string render_grid_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                            const std::vector<std::vector<double>>& values,
                            const std::string& title, const std::string& x_label,
                            const std::string& y_label);

}  // namespace qwit
