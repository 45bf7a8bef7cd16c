// Copyright 2026 The srlz Authors. All Rights Reserved.
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

#ifndef SRLZ_SRLZ_HPP_
#define SRLZ_SRLZ_HPP_

#include "srlz/bitio.hpp"
#include "srlz/bitstream.hpp"
#include "srlz/bounds.hpp"
#include "srlz/cond_lz.hpp"
#include "srlz/container.hpp"
#include "srlz/distortion.hpp"
#include "srlz/empirics.hpp"
#include "srlz/error.hpp"
#include "srlz/fsm.hpp"
#include "srlz/lz.hpp"
#include "srlz/mdc.hpp"
#include "srlz/regions.hpp"
#include "srlz/sequence.hpp"
#include "srlz/sr_codec.hpp"
#include "srlz/verify.hpp"

#endif  // SRLZ_SRLZ_HPP_
