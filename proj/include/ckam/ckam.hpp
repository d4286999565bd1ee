// Copyright 2026 The ckam authors
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

#ifndef CKAM_CKAM_HPP
#define CKAM_CKAM_HPP

#include "ckam/aubry.hpp"
#include "ckam/common.hpp"
#include "ckam/herman.hpp"
#include "ckam/melnikov.hpp"
#include "ckam/perturb.hpp"
#include "ckam/rotation.hpp"
#include "ckam/trigapprox.hpp"
#include "ckam/trigpoly.hpp"
#include "ckam/twistmap.hpp"

#endif  // CKAM_CKAM_HPP
