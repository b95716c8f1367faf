/*
Copyright 2026 The PJ Codec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Umbrella header for the PJ storage codec.

#pragma once

#include "pj/bits.hpp"
#include "pj/channel_sim.hpp"
#include "pj/errors.hpp"
#include "pj/fasta.hpp"
#include "pj/idx.hpp"
#include "pj/image.hpp"
#include "pj/inpaint.hpp"
#include "pj/io.hpp"
#include "pj/jr_codec.hpp"
#include "pj/nucleotide.hpp"
#include "pj/parallel.hpp"
#include "pj/partition_mapper.hpp"
#include "pj/recovery_metrics.hpp"
#include "pj/rng.hpp"
#include "pj/ssim.hpp"
#include "pj/strand_layout.hpp"
#include "pj/version.hpp"
