pub mod acceptance;
pub mod exact;
pub mod g2_forms;
pub mod lattice;
pub mod pipeline;
pub mod root_systems;
pub mod su2_groups;
pub mod torus_actions;
