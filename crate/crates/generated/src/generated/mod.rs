// Generated index of specialised steppers (rust). Do not edit.

mod scalar_srk1_w1;
mod scalar_srk2_w1;
mod scalar_k1p1_w1;
mod strong_srk1_w1;
mod strong_srk1_w2;
mod strong_srk1_w3;
mod strong_srk1_w4;
mod strong_srk1_w5;
mod strong_srk1_w6;
mod strong_srk2_w1;
mod strong_srk2_w2;
mod strong_srk2_w3;
mod strong_srk2_w4;
mod strong_srk2_w5;
mod strong_srk2_w6;
mod weak_ri1_w1;
mod weak_ri1_w2;
mod weak_ri1_w3;
mod weak_ri1_w4;
mod weak_ri1_w5;
mod weak_ri1_w6;

pub use self::scalar_srk1_w1::scalar_srk1_w1;
pub use self::scalar_srk2_w1::scalar_srk2_w1;
pub use self::scalar_k1p1_w1::scalar_k1p1_w1;
pub use self::strong_srk1_w1::strong_srk1_w1;
pub use self::strong_srk1_w2::strong_srk1_w2;
pub use self::strong_srk1_w3::strong_srk1_w3;
pub use self::strong_srk1_w4::strong_srk1_w4;
pub use self::strong_srk1_w5::strong_srk1_w5;
pub use self::strong_srk1_w6::strong_srk1_w6;
pub use self::strong_srk2_w1::strong_srk2_w1;
pub use self::strong_srk2_w2::strong_srk2_w2;
pub use self::strong_srk2_w3::strong_srk2_w3;
pub use self::strong_srk2_w4::strong_srk2_w4;
pub use self::strong_srk2_w5::strong_srk2_w5;
pub use self::strong_srk2_w6::strong_srk2_w6;
pub use self::weak_ri1_w1::weak_ri1_w1;
pub use self::weak_ri1_w2::weak_ri1_w2;
pub use self::weak_ri1_w3::weak_ri1_w3;
pub use self::weak_ri1_w4::weak_ri1_w4;
pub use self::weak_ri1_w5::weak_ri1_w5;
pub use self::weak_ri1_w6::weak_ri1_w6;

/// Every generated stepper, in generation order.
pub static ENTRIES: &[crate::Entry] = &[
    crate::Entry {
        function: "scalar_srk1_w1",
        table: "SRK1W1",
        m: 1,
        time_mixed: true,
        cross: false,
        step: crate::StepFn::Strong(scalar_srk1_w1),
    },
    crate::Entry {
        function: "scalar_srk2_w1",
        table: "SRK2W1",
        m: 1,
        time_mixed: true,
        cross: false,
        step: crate::StepFn::Strong(scalar_srk2_w1),
    },
    crate::Entry {
        function: "scalar_k1p1_w1",
        table: "K1P1",
        m: 1,
        time_mixed: false,
        cross: false,
        step: crate::StepFn::Strong(scalar_k1p1_w1),
    },
    crate::Entry {
        function: "strong_srk1_w1",
        table: "SRK1Wm",
        m: 1,
        time_mixed: false,
        cross: false,
        step: crate::StepFn::Strong(strong_srk1_w1),
    },
    crate::Entry {
        function: "strong_srk1_w2",
        table: "SRK1Wm",
        m: 2,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk1_w2),
    },
    crate::Entry {
        function: "strong_srk1_w3",
        table: "SRK1Wm",
        m: 3,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk1_w3),
    },
    crate::Entry {
        function: "strong_srk1_w4",
        table: "SRK1Wm",
        m: 4,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk1_w4),
    },
    crate::Entry {
        function: "strong_srk1_w5",
        table: "SRK1Wm",
        m: 5,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk1_w5),
    },
    crate::Entry {
        function: "strong_srk1_w6",
        table: "SRK1Wm",
        m: 6,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk1_w6),
    },
    crate::Entry {
        function: "strong_srk2_w1",
        table: "SRK2Wm",
        m: 1,
        time_mixed: false,
        cross: false,
        step: crate::StepFn::Strong(strong_srk2_w1),
    },
    crate::Entry {
        function: "strong_srk2_w2",
        table: "SRK2Wm",
        m: 2,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk2_w2),
    },
    crate::Entry {
        function: "strong_srk2_w3",
        table: "SRK2Wm",
        m: 3,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk2_w3),
    },
    crate::Entry {
        function: "strong_srk2_w4",
        table: "SRK2Wm",
        m: 4,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk2_w4),
    },
    crate::Entry {
        function: "strong_srk2_w5",
        table: "SRK2Wm",
        m: 5,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk2_w5),
    },
    crate::Entry {
        function: "strong_srk2_w6",
        table: "SRK2Wm",
        m: 6,
        time_mixed: false,
        cross: true,
        step: crate::StepFn::Strong(strong_srk2_w6),
    },
    crate::Entry {
        function: "weak_ri1_w1",
        table: "RI1",
        m: 1,
        time_mixed: false,
        cross: false,
        step: crate::StepFn::Weak(weak_ri1_w1),
    },
    crate::Entry {
        function: "weak_ri1_w2",
        table: "RI1",
        m: 2,
        time_mixed: false,
        cross: false,
        step: crate::StepFn::Weak(weak_ri1_w2),
    },
    crate::Entry {
        function: "weak_ri1_w3",
        table: "RI1",
        m: 3,
        time_mixed: false,
        cross: false,
        step: crate::StepFn::Weak(weak_ri1_w3),
    },
    crate::Entry {
        function: "weak_ri1_w4",
        table: "RI1",
        m: 4,
        time_mixed: false,
        cross: false,
        step: crate::StepFn::Weak(weak_ri1_w4),
    },
    crate::Entry {
        function: "weak_ri1_w5",
        table: "RI1",
        m: 5,
        time_mixed: false,
        cross: false,
        step: crate::StepFn::Weak(weak_ri1_w5),
    },
    crate::Entry {
        function: "weak_ri1_w6",
        table: "RI1",
        m: 6,
        time_mixed: false,
        cross: false,
        step: crate::StepFn::Weak(weak_ri1_w6),
    },
];
