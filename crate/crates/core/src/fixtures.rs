//! Reference models shipped with the crate (see `fixtures/*.wm`).

use crate::format::parse_model;
use crate::model::WeakModel;

macro_rules! fixture {
    ($($(#[$doc:meta])* $name:ident => $file:literal;)*) => {
        $(
            $(#[$doc])*
            pub fn $name() -> WeakModel {
                parse_model(include_str!(concat!("../fixtures/", $file)))
                    .expect(concat!("fixture ", $file, " parses"))
            }
        )*

        /// Every fixture, keyed by file stem.
        pub fn all() -> Vec<(&'static str, WeakModel)> {
            vec![$((stringify!($name), $name())),*]
        }
    };
}

fixture! {
    /// Multi-colored example: `b` emits B or R.
    fig1 => "fig1.wm";
    /// Untrackable hub with two red spokes.
    fig2a => "fig2a.wm";
    fig2a_p => "fig2a_p.wm";
    /// Trackable, at most two hypotheses.
    fig2b => "fig2b.wm";
    fig2b_p => "fig2b_p.wm";
    /// Linear growth through a transient self-loop.
    fig3a => "fig3a.wm";
    fig3a_p => "fig3a_p.wm";
    /// Linear growth until R reveals entry into the recurrent class.
    fig3b => "fig3b.wm";
    fig3b_p => "fig3b_p.wm";
    /// Bounded variant of `fig3b` whose recurrent class has period 2.
    fig3b_loopless => "fig3b_loopless.wm";
    fig3b_loopless_p => "fig3b_loopless_p.wm";
    /// Strongly connected, untrackable through a branch and a return path.
    fig4 => "fig4.wm";
    /// Same-colored out-neighbors at `a`.
    fig5a => "fig5a.wm";
    fig5a_p => "fig5a_p.wm";
    /// `fig5a_p` with `P(f -> a) = 0.01`.
    fig5a_p_slow => "fig5a_p_slow.wm";
    /// Alternating 4-cycle with a color-preserving rotation.
    fig7s => "fig7s.wm";
    fig7s_p => "fig7s_p.wm";
    /// Untrackable transient part, trackable recurrent node.
    fig8s => "fig8s.wm";
    fig8s_p => "fig8s_p.wm";
    /// `fig8s` with every node colored B.
    fig8s_mono => "fig8s_mono.wm";
    fig8s_mono_p => "fig8s_mono_p.wm";
}
