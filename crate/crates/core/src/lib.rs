// SPDX-License-Identifier: Apache-2.0

//! Quantum circuit synthesis and optimization.

pub mod circuit;
pub mod device;
pub mod gf2;
pub mod tableau;
pub mod tensor;
pub mod zx;
