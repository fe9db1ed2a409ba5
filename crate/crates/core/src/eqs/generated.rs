//! Closed-form first and second derivatives of the residual system.
//!
//! Generated by tools/gen_derivs.py from the residual definitions via
//! symbolic differentiation and common-subexpression elimination; do not
//! edit by hand. Regenerate with `python3 tools/gen_derivs.py`.

use crate::scalar::Real;
#[allow(unused_imports)]
use crate::scalar::{cube, num, pow_3_2, pow_m3_2, pow_m5_2, pow_m7_2, recip, sq};

/// SHA-256 of the generated expression section, recorded in certificates.
pub const DERIV_CODE_HASH: &str = "432f14cd6398f91f7c742a24fa2d6e0c03eddd4dac6b55aec68f0ec54871b8cf";

/// Row-major [f12, f13, f14, f23, f24, f34].
#[allow(clippy::too_many_lines)]
pub fn six_residuals_raw<T: Real>(x1: T, y1: T, x3: T, y3: T, m1: T, m3: T, m4: T) -> [T; 6] {
    let x0 = sq(y1);
    let x2 = x1 + num::<T>(-1.0);
    let x4 = pow_m3_2(x0 + sq(x2));
    let x5 = num::<T>(0.25)*y1;
    let x6 = x3 + num::<T>(1.0);
    let x7 = x1 + num::<T>(1.0);
    let x8 = x6*y1 - x7*y3;
    let x9 = sq(y3);
    let x10 = pow_m3_2(sq(x6) + x9);
    let x11 = pow_m3_2(sq(x1 - x3) + sq(y1 - y3));
    let x12 = pow_m3_2(x0 + sq(x7));
    let x13 = -x12;
    let x14 = x3 + num::<T>(-1.0);
    let x15 = x14*y1 - x2*y3;
    let x16 = pow_m3_2(sq(x14) + x9);
    let x17 = -x4;
    let x18 = -x16;
    [
        m3*x8*(-x10 + x11) - m4*x5*(num::<T>(1.0) - num::<T>(8.0)*x4),
        m4*x15*(x16 + x17) + x8*(x10 + x13),
        m3*x15*(x11 + x18) + x5*(num::<T>(1.0) - num::<T>(8.0)*x12),
        -m1*x8*(x11 + x13) - num::<T>(0.25)*m4*y3*(num::<T>(1.0) - num::<T>(8.0)*x16),
        num::<T>(2.0)*m1*y1*(x12 + x17) + num::<T>(2.0)*m3*y3*(x10 + x18),
        -m1*x15*(x11 + x17) + num::<T>(0.25)*y3*(num::<T>(1.0) - num::<T>(8.0)*x10),
    ]
}

/// Row-major 4x4: d[f12,f13,f14,f23]/d[x1,y1,x3,y3].
#[allow(clippy::too_many_lines)]
pub fn jac_x_raw<T: Real>(x1: T, y1: T, x3: T, y3: T, m1: T, m3: T, m4: T) -> [T; 16] {
    let x0 = x1 + num::<T>(-1.0);
    let x2 = sq(y1);
    let x4 = sq(x0) + x2;
    let x5 = m4*pow_m5_2(x4);
    let x6 = x0*x5;
    let x7 = sq(y3);
    let x8 = x3 + num::<T>(1.0);
    let x9 = x7 + sq(x8);
    let x10 = pow_m3_2(x9);
    let x11 = x1 - x3;
    let x12 = y1 - y3;
    let x13 = sq(x11) + sq(x12);
    let x14 = pow_m3_2(x13);
    let x15 = -x10 + x14;
    let x16 = pow_m5_2(x13);
    let x17 = x11*x16;
    let x18 = x1 + num::<T>(1.0);
    let x19 = -x18*y3 + x8*y1;
    let x20 = num::<T>(3.0)*x19;
    let x21 = m3*x20;
    let x22 = num::<T>(6.0)*x2;
    let x23 = pow_m3_2(x4);
    let x24 = num::<T>(0.25)*m4;
    let x25 = x12*x16;
    let x26 = pow_m5_2(x9);
    let x27 = x26*x8;
    let x28 = x26*y3;
    let x29 = sq(x18) + x2;
    let x30 = pow_m3_2(x29);
    let x31 = -x30;
    let x32 = x10 + x31;
    let x33 = x3 + num::<T>(-1.0);
    let x34 = sq(x33) + x7;
    let x35 = pow_m3_2(x34);
    let x36 = -x23 + x35;
    let x37 = m4*x36;
    let x38 = pow_m5_2(x29);
    let x39 = x18*x38;
    let x40 = -num::<T>(3.0)*x19;
    let x41 = -x0*y3 + x33*y1;
    let x42 = -num::<T>(3.0)*x41;
    let x43 = x38*y1;
    let x44 = pow_m5_2(x34);
    let x45 = x33*x44;
    let x46 = x44*y3;
    let x47 = num::<T>(3.0)*x41;
    let x48 = x14 - x35;
    let x49 = m3*x48;
    let x50 = m3*x47;
    let x51 = x14 + x31;
    let x52 = num::<T>(6.0)*m4;
    let x53 = m1*x20;
    [
        -m3*x15*y3 - x17*x21 - num::<T>(6.0)*x6*y1,
        m3*x15*x8 - x21*x25 - x22*x5 - x24*(num::<T>(1.0) - num::<T>(8.0)*x23),
        m3*(x15*y1 + x20*(x17 + x27)),
        m3*(-x15*x18 + num::<T>(3.0)*x19*(x25 + x28)),
        -x32*y3 - x37*y3 - x39*x40 - x42*x6,
        m4*x33*x36 + x32*x8 - x40*x43 - x42*x5*y1,
        m4*x42*x45 + x27*x40 + x32*y1 + x37*y1,
        -m4*x46*x47 - x0*x37 - x18*x32 - x20*x28,
        -x17*x50 + num::<T>(6.0)*x18*x38*y1 - x49*y3,
        -num::<T>(2.0)*x30 + x22*x38 - x25*x50 + x33*x49 + num::<T>(0.25),
        m3*(x47*(x17 + x45) + x48*y1),
        m3*(-x0*x48 + num::<T>(3.0)*x41*(x25 + x46)),
        m1*(x20*(x11*x16 - x39) + x51*y3),
        -m1*(x20*(-x12*x16 + x43) + x51*x8),
        -m1*x51*y1 - x17*x53 - x45*x52*y3,
        m1*x18*x51 - x24*(num::<T>(1.0) - num::<T>(8.0)*x35) - x25*x53 - x44*x52*x7,
    ]
}

/// Row-major 4x3: d[f12,f13,f14,f23]/d[m1,m3,m4]; entries depend on x only.
#[allow(clippy::too_many_lines)]
pub fn jac_m_raw<T: Real>(x1: T, y1: T, x3: T, y3: T, m1: T, m3: T, m4: T) -> [T; 12] {
    let _ = (m1, m3, m4);
    let x0 = x3 + num::<T>(1.0);
    let x2 = x1 + num::<T>(1.0);
    let x4 = x0*y1 - x2*y3;
    let x5 = sq(y3);
    let x6 = pow_m3_2(sq(x1 - x3) + sq(y1 - y3));
    let x7 = sq(y1);
    let x8 = x1 + num::<T>(-1.0);
    let x9 = -pow_m3_2(x7 + sq(x8));
    let x10 = x3 + num::<T>(-1.0);
    let x11 = x10*y1 - x8*y3;
    let x12 = pow_m3_2(sq(x10) + x5);
    let x13 = -x12;
    [
        num::<T>(0.0),
        x4*(x6 - pow_m3_2(sq(x0) + x5)),
        -num::<T>(2.0)*y1*(x9 + num::<T>(0.125)),
        num::<T>(0.0),
        num::<T>(0.0),
        x11*(x12 + x9),
        num::<T>(0.0),
        x11*(x13 + x6),
        num::<T>(0.0),
        -x4*(x6 - pow_m3_2(sq(x2) + x7)),
        num::<T>(0.0),
        -num::<T>(2.0)*y3*(x13 + num::<T>(0.125)),
    ]
}

/// Four row-major 4x4 position Hessians, one per component of F.
#[allow(clippy::too_many_lines)]
pub fn hess_xx_raw<T: Real>(x1: T, y1: T, x3: T, y3: T, m1: T, m3: T, m4: T) -> [T; 64] {
    let x0 = num::<T>(2.0)*y1;
    let x2 = sq(y1);
    let x4 = x1 + num::<T>(-1.0);
    let x5 = sq(x4);
    let x6 = x2 + x5;
    let x7 = pow_m5_2(x6);
    let x8 = m4*x7;
    let x9 = pow_m7_2(x6);
    let x10 = m4*x9;
    let x11 = num::<T>(2.0)*y3;
    let x12 = x1 - x3;
    let x13 = sq(x12);
    let x14 = y1 - y3;
    let x15 = sq(x14);
    let x16 = x13 + x15;
    let x17 = pow_m5_2(x16);
    let x18 = x12*x17;
    let x19 = m3*x18;
    let x20 = x11*x19;
    let x21 = x3 + num::<T>(1.0);
    let x22 = x21*y1;
    let x23 = x1 + num::<T>(1.0);
    let x24 = x23*y3;
    let x25 = x22 - x24;
    let x26 = x17*x25;
    let x27 = m3*x26;
    let x28 = pow_m7_2(x16);
    let x29 = num::<T>(5.0)*x28;
    let x30 = x13*x29;
    let x31 = x25*x30;
    let x32 = num::<T>(2.0)*x4;
    let x33 = num::<T>(10.0)*x2;
    let x34 = x14*x17;
    let x35 = m3*x34;
    let x36 = x35*y3;
    let x37 = x12*x14;
    let x38 = m3*x29*x37;
    let x39 = num::<T>(3.0)*x10*x33*x4 - num::<T>(3.0)*x19*x21 + num::<T>(3.0)*x25*x38 - num::<T>(3.0)*x32*x8 + num::<T>(3.0)*x36;
    let x40 = x18*y1;
    let x41 = sq(y3);
    let x42 = sq(x21);
    let x43 = x41 + x42;
    let x44 = pow_m5_2(x43);
    let x45 = x21*x44;
    let x46 = x18 + x45;
    let x47 = num::<T>(3.0)*m3;
    let x48 = -x47*(-x26 + x31 + x40 + x46*y3);
    let x49 = pow_m3_2(x43);
    let x50 = x44*y3;
    let x51 = x34 + x50;
    let x52 = num::<T>(3.0)*y3;
    let x53 = num::<T>(3.0)*x23;
    let x54 = pow_m3_2(x16);
    let x55 = x28*x37;
    let x56 = num::<T>(15.0)*x55;
    let x57 = x25*x56;
    let x58 = x54 + x57;
    let x59 = -m3*(-x18*x53 - x49 + x51*x52 + x58);
    let x60 = x8*y1;
    let x61 = cube(y1);
    let x62 = num::<T>(2.0)*x21;
    let x63 = num::<T>(3.0)*x21;
    let x64 = num::<T>(3.0)*y1;
    let x65 = x34*x64 - x54;
    let x66 = -m3*(-x46*x63 + x49 + x57 + x65);
    let x67 = x23*x34;
    let x68 = x15*x29;
    let x69 = x25*x68;
    let x70 = x47*(x21*x51 + x26 + x67 - x69);
    let x71 = pow_m7_2(x43);
    let x72 = num::<T>(5.0)*x71;
    let x73 = -x17 + x30;
    let x74 = x21*y3;
    let x75 = -x55;
    let x76 = num::<T>(5.0)*x25;
    let x77 = -x47*(x23*x46 - x51*y1 + x76*(x71*x74 + x75));
    let x78 = x41*x72;
    let x79 = x17 - x68;
    let x80 = sq(x23);
    let x81 = x2 + x80;
    let x82 = pow_m5_2(x81);
    let x83 = num::<T>(2.0)*x82;
    let x84 = x4*y3;
    let x85 = num::<T>(2.0)*x8;
    let x86 = x3 + num::<T>(-1.0);
    let x87 = x86*y1;
    let x88 = -x84 + x87;
    let x89 = pow_m7_2(x81);
    let x90 = x76*x89;
    let x91 = m4*x88;
    let x92 = num::<T>(5.0)*x9*x91;
    let x93 = x82*y1;
    let x94 = x89*y1;
    let x95 = x23*x94;
    let x96 = num::<T>(3.0)*m4*x4*x7*x86 + num::<T>(3.0)*x21*x23*x82 - num::<T>(3.0)*x4*x92*y1 - num::<T>(3.0)*x60*y3 - num::<T>(3.0)*x76*x95 - num::<T>(3.0)*x93*y3;
    let x97 = x23*x82;
    let x98 = sq(x86);
    let x99 = x41 + x98;
    let x100 = pow_m5_2(x99);
    let x101 = x100*x86;
    let x102 = m4*x101;
    let x103 = num::<T>(3.0)*x102*y3 + num::<T>(3.0)*x4*x60 + num::<T>(3.0)*x45*y3 + num::<T>(3.0)*x97*y1;
    let x104 = num::<T>(3.0)*x82;
    let x105 = num::<T>(3.0)*x8;
    let x106 = -pow_m3_2(x81);
    let x107 = pow_m3_2(x99);
    let x108 = m4*(x107 - pow_m3_2(x6)) + x106 + x49;
    let x109 = num::<T>(3.0)*m4*x100*x41 - x104*x80 - x105*x5 - x108 + num::<T>(3.0)*x41*x44;
    let x110 = m4*x100;
    let x111 = x104*x2 + x105*x2 + x108 - num::<T>(3.0)*x110*x98 - num::<T>(3.0)*x42*x44;
    let x112 = -x103;
    let x113 = num::<T>(2.0)*x44;
    let x114 = num::<T>(2.0)*x110;
    let x115 = x25*x44;
    let x116 = x100*x91;
    let x117 = pow_m7_2(x99);
    let x118 = x100*y3;
    let x119 = m4*x118;
    let x120 = num::<T>(5.0)*x117;
    let x121 = num::<T>(3.0)*x102*x4 - num::<T>(3.0)*x119*y1 + num::<T>(3.0)*x120*x86*x91*y3 + num::<T>(3.0)*x23*x45 + num::<T>(3.0)*x25*x72*x74 - num::<T>(3.0)*x50*y1;
    let x122 = x120*x41;
    let x123 = x17*x88;
    let x124 = m3*x123;
    let x125 = x30*x88;
    let x126 = -num::<T>(3.0)*x19*x86 - num::<T>(3.0)*x23*x33*x89 + num::<T>(3.0)*x36 + num::<T>(3.0)*x38*x88 + num::<T>(6.0)*x97;
    let x127 = x101 + x18;
    let x128 = -x47*(-x123 + x125 + x127*y3 + x40);
    let x129 = x118 + x34;
    let x130 = x56*x88;
    let x131 = -m3*(-x107 + x129*x52 + x130 - num::<T>(3.0)*x18*x4 + x54);
    let x132 = -m3*(x107 - num::<T>(3.0)*x127*x86 + x130 + x65);
    let x133 = x47*(x123 + x129*x86 + x34*x4 - x68*x88);
    let x134 = -x47*(x127*x4 - x129*y1 + num::<T>(5.0)*x88*(x117*x86*y3 + x75));
    let x135 = -x18 + x97;
    let x136 = -x82;
    let x137 = num::<T>(5.0)*x89;
    let x138 = num::<T>(3.0)*m1;
    let x139 = -x34 + x93;
    let x140 = x138*(-x135*x21 + x139*y3 + x76*(x75 + x95));
    let x141 = num::<T>(5.0)*recip(x16);
    let x142 = x138*(-x135*y1 + x18*y3 + x26*(x13*x141 + num::<T>(-1.0)));
    let x143 = m1*(x106 + x135*x53 + x34*x52 + x58);
    let x144 = -m1*(x106 + x139*x64 + x18*x63 + x54 - x57);
    let x145 = x138*(x139*x23 - x21*x34 + x26*(x141*x15 + num::<T>(-1.0)));
    let x146 = num::<T>(2.0)*m1;
    let x147 = num::<T>(3.0)*m1*x12*x17*x23 - num::<T>(3.0)*m1*x25*x29*x37 - num::<T>(3.0)*m1*x34*y1 + num::<T>(30.0)*m4*x117*x41*x86 - num::<T>(6.0)*x102;
    [
        num::<T>(3.0)*m3*x31 - num::<T>(3.0)*x0*x8 + num::<T>(30.0)*x10*x5*y1 + num::<T>(3.0)*x20 - num::<T>(3.0)*x27,
        x39,
        x48,
        x59,
        x39,
        num::<T>(15.0)*m3*x15*x25*x28 + num::<T>(30.0)*m4*x61*x9 - num::<T>(3.0)*x27 - num::<T>(3.0)*x35*x62 - num::<T>(18.0)*x60,
        x66,
        x70,
        x48,
        x66,
        x47*(x0*x46 + x25*(-x42*x72 + x44 + x73)),
        x77,
        x59,
        x70,
        x77,
        -x47*(num::<T>(2.0)*x23*x51 + x25*(-x44 + x78 + x79)),
        num::<T>(3.0)*m4*x7*x88 - num::<T>(3.0)*x24*x83 + num::<T>(3.0)*x25*x82 - num::<T>(3.0)*x5*x92 - num::<T>(3.0)*x80*x90 - num::<T>(3.0)*x84*x85,
        x96,
        x103,
        x109,
        x96,
        -num::<T>(3.0)*x2*x90 - num::<T>(3.0)*x2*x92 + num::<T>(3.0)*x22*x83 + num::<T>(3.0)*x25*x82 + num::<T>(3.0)*x7*x91 + num::<T>(3.0)*x85*x87,
        x111,
        x112,
        x103,
        x111,
        num::<T>(15.0)*m4*x117*x88*x98 - num::<T>(3.0)*x113*x22 - num::<T>(3.0)*x114*x87 - num::<T>(3.0)*x115 - num::<T>(3.0)*x116 + num::<T>(15.0)*x25*x42*x71,
        x121,
        x109,
        x112,
        x121,
        num::<T>(3.0)*x113*x24 + num::<T>(3.0)*x114*x84 - num::<T>(3.0)*x115 - num::<T>(3.0)*x116 + num::<T>(3.0)*x122*x91 + num::<T>(3.0)*x25*x78,
        num::<T>(3.0)*m3*x125 - num::<T>(3.0)*x124 + num::<T>(3.0)*x20 - num::<T>(30.0)*x80*x94 + num::<T>(6.0)*x93,
        x126,
        x128,
        x131,
        x126,
        num::<T>(15.0)*m3*x15*x28*x88 - num::<T>(3.0)*x124 - num::<T>(6.0)*x35*x86 - num::<T>(30.0)*x61*x89 + num::<T>(18.0)*x82*y1,
        x132,
        x133,
        x128,
        x132,
        x47*(x0*x127 + x88*(x100 - x120*x98 + x73)),
        x134,
        x131,
        x133,
        x134,
        -x47*(x129*x32 + x88*(-x100 + x122 + x79)),
        x138*(x11*x135 + x25*(x136 + x137*x80 + x17 - x30)),
        x140,
        x142,
        x143,
        x140,
        -x138*(x139*x62 - x25*(x136 + x137*x2 + x79)),
        x144,
        x145,
        x142,
        x144,
        num::<T>(3.0)*m1*x17*x25 - num::<T>(3.0)*m1*x31 + num::<T>(30.0)*m4*x117*x98*y3 - num::<T>(6.0)*x119 - num::<T>(3.0)*x146*x40,
        x147,
        x143,
        x145,
        x147,
        num::<T>(3.0)*m1*x26 - num::<T>(3.0)*m1*x69 + num::<T>(30.0)*m4*x117*cube(y3) - num::<T>(18.0)*x119 + num::<T>(3.0)*x146*x67,
    ]
}

/// Four row-major 4x3 mixed x-m second derivatives; entries depend on x only.
#[allow(clippy::too_many_lines)]
pub fn hess_xm_raw<T: Real>(x1: T, y1: T, x3: T, y3: T, m1: T, m3: T, m4: T) -> [T; 48] {
    let _ = (m1, m3, m4);
    let x0 = sq(y3);
    let x2 = x3 + num::<T>(1.0);
    let x4 = x0 + sq(x2);
    let x5 = x1 - x3;
    let x6 = y1 - y3;
    let x7 = sq(x5) + sq(x6);
    let x8 = pow_m3_2(x7);
    let x9 = x8 - pow_m3_2(x4);
    let x10 = pow_m5_2(x7);
    let x11 = x10*x5;
    let x12 = x1 + num::<T>(1.0);
    let x13 = -x12*y3 + x2*y1;
    let x14 = num::<T>(3.0)*x13;
    let x15 = x11*x14;
    let x16 = x1 + num::<T>(-1.0);
    let x17 = sq(y1);
    let x18 = sq(x16) + x17;
    let x19 = pow_m5_2(x18);
    let x20 = num::<T>(6.0)*x19;
    let x21 = x10*x6;
    let x22 = -x14*x21;
    let x23 = pow_m3_2(x18);
    let x24 = pow_m5_2(x4);
    let x25 = x3 + num::<T>(-1.0);
    let x26 = x0 + sq(x25);
    let x27 = pow_m3_2(x26);
    let x28 = -x23 + x27;
    let x29 = -x16*y3 + x25*y1;
    let x30 = num::<T>(3.0)*x29;
    let x31 = pow_m5_2(x26);
    let x32 = x25*x31;
    let x33 = x31*y3;
    let x34 = -x27 + x8;
    let x35 = sq(x12) + x17;
    let x36 = x8 - pow_m3_2(x35);
    let x37 = pow_m5_2(x35);
    [
        num::<T>(0.0),
        -x15 - x9*y3,
        -x16*x20*y1,
        num::<T>(0.0),
        x2*x9 + x22,
        num::<T>(2.0)*x23 - x17*x20 + num::<T>(-0.25),
        num::<T>(0.0),
        x14*(x11 + x2*x24) + x9*y1,
        num::<T>(0.0),
        num::<T>(0.0),
        -x12*x9 + num::<T>(3.0)*x13*(x21 + x24*y3),
        num::<T>(0.0),
        num::<T>(0.0),
        num::<T>(0.0),
        num::<T>(3.0)*x16*x19*x29 - x28*y3,
        num::<T>(0.0),
        num::<T>(0.0),
        x19*x30*y1 + x25*x28,
        num::<T>(0.0),
        num::<T>(0.0),
        x28*y1 - x30*x32,
        num::<T>(0.0),
        num::<T>(0.0),
        -x16*x28 - x30*x33,
        num::<T>(0.0),
        -x11*x30 - x34*y3,
        num::<T>(0.0),
        num::<T>(0.0),
        -x21*x30 + x25*x34,
        num::<T>(0.0),
        num::<T>(0.0),
        x30*(x11 + x32) + x34*y1,
        num::<T>(0.0),
        num::<T>(0.0),
        -x16*x34 + num::<T>(3.0)*x29*(x21 + x33),
        num::<T>(0.0),
        -x14*(-x11 + x12*x37) + x36*y3,
        num::<T>(0.0),
        num::<T>(0.0),
        -x14*(-x21 + x37*y1) - x2*x36,
        num::<T>(0.0),
        num::<T>(0.0),
        -x15 - x36*y1,
        num::<T>(0.0),
        -num::<T>(6.0)*x32*y3,
        x12*x36 + x22,
        num::<T>(0.0),
        num::<T>(2.0)*x27 - num::<T>(6.0)*x0*x31 + num::<T>(-0.25),
    ]
}
