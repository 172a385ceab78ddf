//! Conditioning: the generalised Bayes rule, natural and regular extension
//! for incomplete observations, and marginal extension.

mod joint;
mod root;
mod update;

pub use joint::{
    marginal_extension2, marginal_extension3, AttainedLower, ConditionalFamily, JointLowerPrevision,
};
pub use root::{greatest_root, LineEnvelope, SupportedFunction};
pub use update::{gbr_conditional, gbr_on_event, natural_extension_obs, regular_extension_obs, Updated};
