//! Spin operators, product-space embedding and tensor rotations.

pub mod embed;
pub mod matrix;
pub mod spin;
pub mod tensor;

pub use embed::{embed_operator, embed_product, EmbeddingMap};
pub use matrix::CMat;
pub use spin::{make_spin_operators, Spin, SpinOperators};
pub use tensor::{
    axis_angle_rotation, axis_from_angles, euler_rotation, rotate_axial_tensor, rotate_tensor,
    tetrahedral_angle, tetrahedral_axis, AxialTensor,
};
