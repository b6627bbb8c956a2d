// Copyright 2026 The effradius Authors
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

#ifndef EFFRADIUS_EFFRADIUS_HPP_
#define EFFRADIUS_EFFRADIUS_HPP_

#include "effradius/associated.hpp"
#include "effradius/core.hpp"
#include "effradius/directional.hpp"
#include "effradius/errors.hpp"
#include "effradius/example1.hpp"
#include "effradius/format.hpp"
#include "effradius/generate.hpp"
#include "effradius/io.hpp"
#include "effradius/oracle.hpp"
#include "effradius/parallel.hpp"
#include "effradius/radius.hpp"
#include "effradius/sampling.hpp"
#include "effradius/spectral.hpp"

#endif  // EFFRADIUS_EFFRADIUS_HPP_
