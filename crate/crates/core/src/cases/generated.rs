// @generated by scripts/gen_manufactured.py -- do not edit by hand.
#![allow(clippy::all, unused_parens)]
/// Velocity inside the support disk |x - c| < 3/4.
#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_smooth_u(x: f64, y: f64, t: f64) -> [f64; 2] {
    let c0 = ((2.0_f64) * t);
    let c1 = ((1.0_f64) + ((-1.0_f64) * c0) + ((4.0_f64) * y));
    let c2 = c1.powi(2);
    let c3 = x.powi(2);
    let c4 = ((-9.0_f64) + c2 + ((16.0_f64) * c3));
    let c5 = ((212.0_f64) + ((57.0_f64) * c2) + ((912.0_f64) * c3));
    let c6 = (c4 * c5);
    let c7 = (c4.powi(3) * c0.sin());
    [((2.8790168042452832e-06_f64) * c7 * x * (c6 + ((8.0_f64) * c2 * c5) + ((114.0_f64) * c2 * c4))), ((-7.197542010613208e-07_f64) * c1 * c7 * (c6 + ((128.0_f64) * c3 * c5) + ((1824.0_f64) * c3 * c4)))]
}

/// Row-major d u_i / d x_j.
#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_smooth_grad_u(x: f64, y: f64, t: f64) -> [f64; 4] {
    let c0 = x.powi(2);
    let c1 = ((2.0_f64) * t);
    let c2 = ((1.0_f64) + ((-1.0_f64) * c1) + ((4.0_f64) * y));
    let c3 = c2.powi(2);
    let c4 = ((-9.0_f64) + c3 + ((16.0_f64) * c0));
    let c5 = c4.powi(2);
    let c6 = (c3 * c4);
    let c7 = ((212.0_f64) + ((57.0_f64) * c3) + ((912.0_f64) * c0));
    let c8 = (c3 * c7);
    let c9 = (c4 * c7);
    let c10 = ((128.0_f64) * c0);
    let c11 = (c5 * c1.sin());
    let c12 = ((2.8790168042452832e-06_f64) * c11 * ((c10 * c9) + (c5 * c7) + ((8.0_f64) * c3 * c9) + ((114.0_f64) * c3 * c5) + ((768.0_f64) * c0 * c8) + ((1824.0_f64) * c0 * c5) + ((29184.0_f64) * c0 * c6)));
    let c13 = (c11 * c2 * x);
    [c12, ((2.3032134433962266e-05_f64) * c13 * (((12.0_f64) * c9) + ((24.0_f64) * c8) + ((171.0_f64) * c5) + ((912.0_f64) * c6))), ((-6.909640330188679e-05_f64) * c13 * (((4.0_f64) * c9) + ((57.0_f64) * c5) + (c10 * c7) + ((4864.0_f64) * c0 * c4))), ((-1.0_f64) * c12)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_smooth_p_pos(x: f64, y: f64, t: f64) -> [f64; 1] {
    [(0.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_smooth_g_pos(x: f64, y: f64, t: f64) -> [f64; 2] {
    let c0 = x.powi(2);
    let c1 = ((2.0_f64) * t);
    let c2 = ((1.0_f64) + ((-1.0_f64) * c1) + ((4.0_f64) * y));
    let c3 = c2.powi(2);
    let c4 = ((-9.0_f64) + c3 + ((16.0_f64) * c0));
    let c5 = c4.powi(3);
    let c6 = c1.sin();
    let c7 = (c5 * c6);
    let c8 = ((10944.0_f64) * c7);
    let c9 = c4.powi(2);
    let c10 = (c6 * c9);
    let c11 = (c0 * c10);
    let c12 = (c6 * c2.powi(4));
    let c13 = (c10 * c3);
    let c14 = c1.cos();
    let c15 = c2.powi(3);
    let c16 = (c10 * c15);
    let c17 = ((212.0_f64) + ((57.0_f64) * c3) + ((912.0_f64) * c0));
    let c18 = (c0 * c3);
    let c19 = (c4 * c6);
    let c20 = ((4202496.0_f64) * c19);
    let c21 = (c17 * c6);
    let c22 = ((49152.0_f64) * c21);
    let c23 = (c10 * c17);
    let c24 = ((768.0_f64) * c23);
    let c25 = (c17 * c19);
    let c26 = (c0 * c25);
    let c27 = (c15 * c25);
    let c28 = ((1824.0_f64) * c0);
    let c29 = (c2 * x.powi(4));
    let c30 = (c14 * c5);
    let c31 = (c0 * c15);
    let c32 = ((128.0_f64) * c17);
    [((5.7580336084905665e-06_f64) * c4 * x * (((-1.0_f64) * c24) + ((-1.0_f64) * c8) + ((-466944.0_f64) * c11) + ((-262656.0_f64) * c13) + ((-12288.0_f64) * c26) + ((-1824.0_f64) * c16) + ((-48.0_f64) * c27) + ((-1.0_f64) * c18 * c20) + ((-1.0_f64) * c18 * c22) + ((-262656.0_f64) * c12 * c4) + ((-6912.0_f64) * c25 * c3) + ((-3072.0_f64) * c12 * c17) + ((-342.0_f64) * c2 * c7) + ((-24.0_f64) * c2 * c23) + (c14 * c17 * c5) + ((114.0_f64) * c14 * c3 * c5) + ((8.0_f64) * c14 * c17 * c3 * c9))), ((20.0_f64) * ((-6.477787809551886e-07_f64) + ((1.1516067216981132e-06_f64) * c0) + ((7.197542010613207e-08_f64) * c3)) * (((768.0_f64) * c27) + ((29184.0_f64) * c16) + (c11 * c32) + (c17 * c7) + (c2 * c24) + (c2 * c8) + (c20 * c31) + (c22 * c31) + (c28 * c7) + ((8.0_f64) * c13 * c17) + ((114.0_f64) * c3 * c7) + ((768.0_f64) * c18 * c25) + ((29184.0_f64) * c11 * c3) + ((110592.0_f64) * c2 * c26) + ((786432.0_f64) * c21 * c29) + ((4202496.0_f64) * c11 * c2) + ((67239936.0_f64) * c19 * c29) + ((-1.0_f64) * c17 * c2 * c30) + ((-1.0_f64) * c2 * c28 * c30) + ((-1.0_f64) * c0 * c14 * c2 * c32 * c9)))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_smooth_p_neg(x: f64, y: f64, t: f64) -> [f64; 1] {
    let c0 = ((2.0_f64) * t);
    let c1 = c0.sin();
    let c2 = ((1.0_f64) + ((-1.0_f64) * c0) + ((4.0_f64) * y)).powi(2);
    let c3 = x.powi(2);
    let c4 = ((16.0_f64) * c3);
    let c5 = ((-9.0_f64) + c2 + c4);
    let c6 = (c3 * c5);
    let c7 = ((212.0_f64) + ((57.0_f64) * c2) + ((912.0_f64) * c3));
    let c8 = (c2 * c5);
    let c9 = (c2 * c7);
    let c10 = (((-1.0_f64) * c9) + ((-38.0_f64) * c8) + ((608.0_f64) * c6) + (c4 * c7));
    let c11 = c5.powi(2);
    let c12 = (c11 * c2);
    let c13 = (c11 * c3);
    let c14 = (((114.0_f64) * c12) + ((1824.0_f64) * c13) + (c11 * c7) + ((8.0_f64) * c5 * c9) + ((128.0_f64) * c6 * c7) + ((768.0_f64) * c3 * c9) + ((29184.0_f64) * c3 * c8));
    [((4.0_f64) + ((-1.1516067216981133e-05_f64) * c1 * c12 * (c14 + ((384.0_f64) * c10 * c3))) + ((0.00018425707547169813_f64) * c1 * c13 * (c14 + ((-24.0_f64) * c10 * c2))))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_smooth_g_neg(x: f64, y: f64, t: f64) -> [f64; 2] {
    let c0 = x.powi(2);
    let c1 = ((16.0_f64) * c0);
    let c2 = ((2.0_f64) * t);
    let c3 = ((1.0_f64) + ((-1.0_f64) * c2) + ((4.0_f64) * y));
    let c4 = c3.powi(2);
    let c5 = ((-9.0_f64) + c1 + c4);
    let c6 = c5.powi(3);
    let c7 = c2.sin();
    let c8 = (c6 * c7);
    let c9 = ((27360.0_f64) * c8);
    let c10 = c5.powi(2);
    let c11 = (c0 * c10);
    let c12 = (c11 * c7);
    let c13 = c3.powi(4);
    let c14 = (c13 * c5);
    let c15 = ((656640.0_f64) * c7);
    let c16 = (c10 * c4);
    let c17 = c2.cos();
    let c18 = (c7 * c3.powi(3));
    let c19 = (c10 * c18);
    let c20 = ((212.0_f64) + ((57.0_f64) * c4) + ((912.0_f64) * c0));
    let c21 = (c13 * c20);
    let c22 = (c4 * c5);
    let c23 = (c0 * c22);
    let c24 = (c20 * c4);
    let c25 = (c0 * c24);
    let c26 = (c10 * c20);
    let c27 = (c26 * c7);
    let c28 = ((1920.0_f64) * c27);
    let c29 = (c0 * c5);
    let c30 = (c20 * c29);
    let c31 = (c30 * c7);
    let c32 = (c24 * c5);
    let c33 = (c18 * c20);
    let c34 = (c33 * c5);
    let c35 = (c1 * c20);
    let c36 = (c7 * (c35 + ((-1.0_f64) * c24) + ((-38.0_f64) * c22) + ((608.0_f64) * c29)));
    let c37 = ((1824.0_f64) * c11);
    let c38 = ((114.0_f64) * c16);
    let c39 = ((128.0_f64) * c30);
    let c40 = ((8.0_f64) * c32);
    let c41 = (c26 + c37 + c38 + c39 + c40 + ((768.0_f64) * c25) + ((29184.0_f64) * c23));
    let c42 = x.powi(4);
    let c43 = (c20 * c42);
    let c44 = (c42 * c5);
    let c45 = (((384.0_f64) * c30) + ((14592.0_f64) * c11));
    let c46 = (((4.0_f64) * c26) + ((57.0_f64) * c6));
    let c47 = (c46 + ((256.0_f64) * c25) + ((21888.0_f64) * c23));
    let c48 = (c46 + ((512.0_f64) * c25) + ((43776.0_f64) * c23));
    let c49 = (((24.0_f64) * c32) + ((912.0_f64) * c16));
    let c50 = (c20 * c6);
    let c51 = (c0 * c6);
    let c52 = (c26 * c4);
    let c53 = (c0 * c26);
    let c54 = (c11 * c4);
    let c55 = (c0 * c32);
    let c56 = (c50 + ((8.0_f64) * c52) + ((128.0_f64) * c53) + ((768.0_f64) * c55) + ((1824.0_f64) * c51) + ((29184.0_f64) * c54) + ((114.0_f64) * c4 * c6));
    let c57 = (c3 * c7);
    let c58 = (c17 * c3);
    let c59 = ((5.0_f64) * c50);
    let c60 = ((640.0_f64) * c53);
    let c61 = ((16.0_f64) * c7);
    [((1.1516067216981133e-05_f64) * c5 * x * (((-1.0_f64) * c28) + ((-1.0_f64) * c9) + ((-1167360.0_f64) * c12) + ((-30720.0_f64) * c31) + ((-9120.0_f64) * c19) + ((-240.0_f64) * c34) + ((-1.0_f64) * c14 * c15) + ((-1.0_f64) * c15 * c16) + ((-10506240.0_f64) * c23 * c7) + ((-122880.0_f64) * c25 * c7) + ((-17280.0_f64) * c32 * c7) + ((-7680.0_f64) * c21 * c7) + ((-1710.0_f64) * c3 * c8) + ((-384.0_f64) * c22 * c36) + ((-120.0_f64) * c27 * c3) + ((16.0_f64) * c7 * (c56 + ((24.0_f64) * c4 * (((-1.0_f64) * c37) + ((-87552.0_f64) * c44) + ((-1024.0_f64) * c43) + ((-48.0_f64) * c30) + ((38.0_f64) * c10 * c4) + (c20 * c4 * c5) + ((64.0_f64) * c0 * c20 * c4) + ((5472.0_f64) * c0 * c4 * c5))) + ((96.0_f64) * c0 * (c39 + c48 + c49 + ((4864.0_f64) * c11))))) + ((5.0_f64) * c17 * c20 * c6) + ((16.0_f64) * c41 * c5 * c7) + ((96.0_f64) * c4 * c7 * (((-1.0_f64) * c45) + ((-1.0_f64) * c47) + ((-350208.0_f64) * c44) + ((-4096.0_f64) * c43) + ((-608.0_f64) * c16) + ((-16.0_f64) * c32))) + ((570.0_f64) * c17 * c4 * c6) + ((40.0_f64) * c10 * c17 * c20 * c4))), ((40.0_f64) * ((-6.477787809551886e-07_f64) + ((1.1516067216981132e-06_f64) * c0) + ((7.197542010613207e-08_f64) * c4)) * (((1920.0_f64) * c34) + ((72960.0_f64) * c19) + (c28 * c3) + (c3 * c9) + (c59 * c7) + (c60 * c7) + ((-1.0_f64) * c58 * c60) + ((-9120.0_f64) * c51 * c58) + ((40.0_f64) * c52 * c7) + ((570.0_f64) * c4 * c8) + ((3840.0_f64) * c55 * c7) + ((9120.0_f64) * c0 * c8) + ((122880.0_f64) * c0 * c33) + ((145920.0_f64) * c54 * c7) + ((276480.0_f64) * c3 * c31) + ((1966080.0_f64) * c43 * c57) + ((10506240.0_f64) * c12 * c3) + ((10506240.0_f64) * c18 * c29) + ((168099840.0_f64) * c44 * c57) + ((-1.0_f64) * c17 * c3 * c59) + ((-1.0_f64) * c3 * c61 * (c56 + ((6.0_f64) * c4 * (c40 + c45 + c48 + ((304.0_f64) * c16))) + ((384.0_f64) * c0 * (((-1.0_f64) * c38) + ((-342.0_f64) * c14) + ((-4.0_f64) * c21) + ((-3.0_f64) * c32) + ((64.0_f64) * c25) + ((608.0_f64) * c11) + ((5472.0_f64) * c23) + (c35 * c5))))) + ((-6144.0_f64) * c29 * c3 * c36) + ((-1536.0_f64) * c0 * c57 * (((-1.0_f64) * c47) + ((-1.0_f64) * c49) + ((-9728.0_f64) * c11) + ((-1368.0_f64) * c14) + ((-256.0_f64) * c30) + ((-16.0_f64) * c21))) + ((-1.0_f64) * c3 * c41 * c5 * c61)))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_kink_u_pos(x: f64, y: f64, t: f64) -> [f64; 2] {
    let c0 = ((2.0_f64) * t);
    let c1 = ((160.0_f64) * ((-0.5625_f64) + x.powi(2) + ((0.0625_f64) * ((1.0_f64) + ((-1.0_f64) * c0) + ((4.0_f64) * y)).powi(2))).powi(4) * c0.sin());
    [((-1.0_f64) * c1 * ((0.25_f64) + y + ((-0.5_f64) * t))), (c1 * x)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_kink_grad_u_pos(x: f64, y: f64, t: f64) -> [f64; 4] {
    let c0 = ((2.0_f64) * t);
    let c1 = c0.sin();
    let c2 = x.powi(2);
    let c3 = ((1.0_f64) + ((-1.0_f64) * c0) + ((4.0_f64) * y));
    let c4 = c3.powi(2);
    let c5 = (c1 * x * ((-0.5625_f64) + c2 + ((0.0625_f64) * c4)).powi(3));
    let c6 = ((-9.0_f64) + ((16.0_f64) * c2));
    let c7 = ((0.00244140625_f64) * c1 * (c4 + c6).powi(3));
    [((-1280.0_f64) * c5 * ((0.25_f64) + y + ((-0.5_f64) * t))), ((-1.0_f64) * c7 * (c6 + ((9.0_f64) * c4))), (c7 * ((-9.0_f64) + c4 + ((144.0_f64) * c2))), ((320.0_f64) * c3 * c5)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_kink_p_pos(x: f64, y: f64, t: f64) -> [f64; 1] {
    [(0.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_kink_g_pos(x: f64, y: f64, t: f64) -> [f64; 2] {
    let c0 = x.powi(2);
    let c1 = ((2.0_f64) * t);
    let c2 = ((1.0_f64) + ((-1.0_f64) * c1) + ((4.0_f64) * y));
    let c3 = c2.powi(2);
    let c4 = ((-9.0_f64) + c3 + ((16.0_f64) * c0));
    let c5 = c4.powi(2);
    let c6 = c1.sin();
    let c7 = ((768.0_f64) * c6);
    let c8 = ((12288.0_f64) * c0 * c6);
    let c9 = (c4 * c6);
    let c10 = ((512.0_f64) * c9);
    let c11 = c1.cos();
    let c12 = ((8.0_f64) * c9);
    [((0.001220703125_f64) * c5 * ((c10 * c2) + (c12 * c3) + (c2 * c8) + (c5 * c6) + (c7 * c2.powi(3)) + ((-1.0_f64) * c11 * c2 * c5))), ((0.0048828125_f64) * c5 * x * (((-1.0_f64) * c10) + ((-1.0_f64) * c8) + (c11 * c5) + ((-1.0_f64) * c12 * c2) + ((-1.0_f64) * c3 * c7)))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_kink_u_neg(x: f64, y: f64, t: f64) -> [f64; 2] {
    let c0 = ((2.0_f64) * t);
    let c1 = ((0.30517578125_f64) * ((-13.0_f64) + ((2.0_f64) * ((1.0_f64) + ((-1.0_f64) * c0) + ((4.0_f64) * y)).powi(2)) + ((32.0_f64) * x.powi(2))) * c0.sin());
    [(c1 * ((0.25_f64) + y + ((-0.5_f64) * t))), ((-1.0_f64) * c1 * x)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_kink_grad_u_neg(x: f64, y: f64, t: f64) -> [f64; 4] {
    let c0 = ((2.0_f64) * t);
    let c1 = c0.sin();
    let c2 = (c1 * x);
    let c3 = x.powi(2);
    let c4 = ((1.0_f64) + ((-1.0_f64) * c0) + ((4.0_f64) * y));
    let c5 = c4.powi(2);
    let c6 = ((0.30517578125_f64) * c1);
    [((19.53125_f64) * c2 * ((0.25_f64) + y + ((-0.5_f64) * t))), (c6 * ((-13.0_f64) + ((6.0_f64) * c5) + ((32.0_f64) * c3))), ((-1.0_f64) * c6 * ((-13.0_f64) + ((2.0_f64) * c5) + ((96.0_f64) * c3))), ((-4.8828125_f64) * c2 * c4)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_kink_p_neg(x: f64, y: f64, t: f64) -> [f64; 1] {
    [(4.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn disk_kink_g_neg(x: f64, y: f64, t: f64) -> [f64; 2] {
    let c0 = ((2.0_f64) * t);
    let c1 = ((1.0_f64) + ((-1.0_f64) * c0) + ((4.0_f64) * y));
    let c2 = c0.sin();
    let c3 = ((512.0_f64) * c2);
    let c4 = c1.powi(2);
    let c5 = ((20.0_f64) * c2);
    let c6 = ((-13.0_f64) + ((2.0_f64) * c4) + ((32.0_f64) * x.powi(2)));
    let c7 = ((5.0_f64) * c6);
    let c8 = c0.cos();
    [(((-0.152587890625_f64) * c1 * c3) + ((-0.152587890625_f64) * c2 * c7) + ((-0.152587890625_f64) * c4 * c5) + ((0.762939453125_f64) * c1 * c6 * c8)), ((0.6103515625_f64) * x * (c3 + (c1 * c5) + ((-1.0_f64) * c7 * c8)))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_smooth_u_pos(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = y.powi(2);
    let c1 = x.powi(2);
    let c2 = ((2.0_f64) * t);
    let c3 = (z.powi(2) + ((-1.0_f64) * c2 * z));
    let c4 = c2.sin();
    let c5 = (c4 * y);
    [(c5 * (c0 + c3 + ((0.2_f64) * c1))), (c4 * x * ((-1.6_f64) + c1 + c3 + ((2.0_f64) * t.powi(2)) + ((0.2_f64) * c0))), ((0.8_f64) * c5 * x * (t + ((-1.0_f64) * z)))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_smooth_grad_u_pos(x: f64, y: f64, z: f64, t: f64) -> [f64; 9] {
    let c0 = ((2.0_f64) * t);
    let c1 = c0.sin();
    let c2 = (c1 * y);
    let c3 = (c2 * x);
    let c4 = ((0.4_f64) * c3);
    let c5 = y.powi(2);
    let c6 = x.powi(2);
    let c7 = (z.powi(2) + ((-1.0_f64) * c0 * z));
    let c8 = (t + ((-1.0_f64) * z));
    let c9 = ((2.0_f64) * c8);
    let c10 = (c1 * x);
    let c11 = ((0.8_f64) * c8);
    [c4, (c1 * (c7 + ((3.0_f64) * c5) + ((0.2_f64) * c6))), ((-1.0_f64) * c2 * c9), (c1 * ((-1.6_f64) + c7 + ((2.0_f64) * t.powi(2)) + ((3.0_f64) * c6) + ((0.2_f64) * c5))), c4, ((-1.0_f64) * c10 * c9), (c11 * c2), (c10 * c11), ((-0.8_f64) * c3)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_smooth_p_pos(x: f64, y: f64, z: f64, t: f64) -> [f64; 1] {
    [(0.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_smooth_g_pos(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = ((2.0_f64) * t);
    let c1 = c0.sin();
    let c2 = ((8.4_f64) * c1);
    let c3 = c0.cos();
    let c4 = x.powi(2);
    let c5 = y.powi(2);
    let c6 = (((5.0_f64) * z.powi(2)) + ((-10.0_f64) * t * z));
    let c7 = ((-1.0_f64) * z);
    [((2.0_f64) * y * (((-1.0_f64) * c2) + ((-1.0_f64) * c1 * z) + ((0.2_f64) * c3 * (c4 + c6 + ((5.0_f64) * c5))))), ((2.0_f64) * x * (((-1.0_f64) * c2) + (c1 * (c0 + c7)) + ((0.2_f64) * c3 * ((-8.0_f64) + c5 + c6 + ((5.0_f64) * c4) + ((10.0_f64) * t.powi(2)))))), ((0.8_f64) * x * y * (c1 + ((2.0_f64) * c3 * (c7 + t))))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_smooth_u_neg(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = y.powi(2);
    let c1 = x.powi(2);
    let c2 = ((2.0_f64) * t);
    let c3 = (z.powi(2) + ((-1.0_f64) * c2 * z));
    let c4 = c2.sin();
    let c5 = (c4 * y);
    [(c5 * (c0 + c3 + ((0.2_f64) * c1))), (c4 * x * ((-1.6_f64) + c1 + c3 + ((2.0_f64) * t.powi(2)) + ((0.2_f64) * c0))), ((0.8_f64) * c5 * x * (t + ((-1.0_f64) * z)))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_smooth_grad_u_neg(x: f64, y: f64, z: f64, t: f64) -> [f64; 9] {
    let c0 = ((2.0_f64) * t);
    let c1 = c0.sin();
    let c2 = (c1 * y);
    let c3 = (c2 * x);
    let c4 = ((0.4_f64) * c3);
    let c5 = y.powi(2);
    let c6 = x.powi(2);
    let c7 = (z.powi(2) + ((-1.0_f64) * c0 * z));
    let c8 = (t + ((-1.0_f64) * z));
    let c9 = ((2.0_f64) * c8);
    let c10 = (c1 * x);
    let c11 = ((0.8_f64) * c8);
    [c4, (c1 * (c7 + ((3.0_f64) * c5) + ((0.2_f64) * c6))), ((-1.0_f64) * c2 * c9), (c1 * ((-1.6_f64) + c7 + ((2.0_f64) * t.powi(2)) + ((3.0_f64) * c6) + ((0.2_f64) * c5))), c4, ((-1.0_f64) * c10 * c9), (c11 * c2), (c10 * c11), ((-0.8_f64) * c3)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_smooth_p_neg(x: f64, y: f64, z: f64, t: f64) -> [f64; 1] {
    [((2.0_f64) * ((1.4142135623730951_f64) + ((9.6_f64) * x * y * ((2.0_f64) * t).sin())))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_smooth_g_neg(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = ((2.0_f64) * t);
    let c1 = c0.sin();
    let c2 = ((100.2_f64) * c1);
    let c3 = ((5.0_f64) * c1);
    let c4 = c0.cos();
    let c5 = x.powi(2);
    let c6 = y.powi(2);
    let c7 = (((5.0_f64) * z.powi(2)) + ((-10.0_f64) * t * z));
    let c8 = ((-1.0_f64) * z);
    [((4.0_f64) * y * (((-1.0_f64) * c2) + (c4 * (c5 + c7 + ((5.0_f64) * c6))) + ((-1.0_f64) * c3 * z))), ((4.0_f64) * x * (((-1.0_f64) * c2) + (c3 * (c0 + c8)) + (c4 * ((-8.0_f64) + c6 + c7 + ((5.0_f64) * c5) + ((10.0_f64) * t.powi(2)))))), ((8.0_f64) * x * y * (c1 + ((2.0_f64) * c4 * (c8 + t))))]
}

/// Interface load correction.
#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_smooth_h(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = x.powi(2);
    let c1 = y.powi(2);
    let c2 = (t + ((-1.0_f64) * z));
    let c3 = c2.powi(2);
    let c4 = (c0 + c1 + c3);
    let c5 = ((10.0_f64) * c4.powi(2));
    let c6 = c4.powf(2.5);
    let c7 = ((2.0_f64) * t).sin();
    let c8 = (c7 * y);
    let c9 = ((144.0_f64) * c3);
    let c10 = ((48.0_f64) * c8);
    let c11 = ((-7.0710678118654755_f64) + (c10 * x));
    let c12 = ((-4.0_f64) + ((5.0_f64) * t.powi(2)) + ((5.0_f64) * z.powi(2)) + ((8.0_f64) * c0) + ((8.0_f64) * c1) + ((-10.0_f64) * t * z));
    let c13 = ((0.4_f64) * (1.0 / c4.powi(3)));
    let c14 = (c7 * x);
    [(c13 * ((c5 * x) + (c6 * ((c10 * c12) + (c11 * x) + (c8 * c9))))), (c13 * ((c5 * y) + (c6 * ((c11 * y) + (c14 * c9) + ((48.0_f64) * c12 * c14))))), ((-1.0_f64) * c13 * c2 * (c5 + (c11 * c6)))]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_kink_u_pos(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = ((0.5_f64) * (((-1.0_f64) * x.powi(2)) + ((-1.0_f64) * y.powi(2)) + ((-1.0_f64) * (t + ((-1.0_f64) * z)).powi(2))).exp() * ((2.0_f64) * t).sin());
    [((-1.0_f64) * c0 * y), (c0 * x), (0.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_kink_grad_u_pos(x: f64, y: f64, z: f64, t: f64) -> [f64; 9] {
    let c0 = x.powi(2);
    let c1 = y.powi(2);
    let c2 = (t + ((-1.0_f64) * z));
    let c3 = ((((-1.0_f64) * c0) + ((-1.0_f64) * c1) + ((-1.0_f64) * c2.powi(2))).exp() * ((2.0_f64) * t).sin());
    let c4 = (c3 * y);
    let c5 = (c4 * x);
    [c5, (c3 * ((-0.5_f64) + c1)), ((-1.0_f64) * c2 * c4), (c3 * ((0.5_f64) + ((-1.0_f64) * c0))), ((-1.0_f64) * c5), (c2 * c3 * x), (0.0_f64), (0.0_f64), (0.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_kink_p_pos(x: f64, y: f64, z: f64, t: f64) -> [f64; 1] {
    [(0.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_kink_g_pos(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = x.powi(2);
    let c1 = y.powi(2);
    let c2 = (t + ((-1.0_f64) * z));
    let c3 = c2.powi(2);
    let c4 = (((-1.0_f64) * c0) + ((-1.0_f64) * c1) + ((-1.0_f64) * c3)).exp();
    let c5 = ((2.0_f64) * t);
    let c6 = c5.sin();
    let c7 = ((4.0_f64) * c6);
    let c8 = (((-1.0_f64) * c5.cos()) + ((-10.0_f64) * c6) + (c0 * c7) + (c1 * c7) + (c2 * c6) + (c3 * c7));
    [(c4 * c8 * y), ((-1.0_f64) * c4 * c8 * x), (0.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_kink_u_neg(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = (((0.3032653298563167_f64) + ((-1.0_f64) * (((-1.0_f64) * x.powi(2)) + ((-1.0_f64) * y.powi(2)) + ((-1.0_f64) * (t + ((-1.0_f64) * z)).powi(2))).exp())) * ((2.0_f64) * t).sin());
    [(c0 * y), ((-1.0_f64) * c0 * x), (0.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_kink_grad_u_neg(x: f64, y: f64, z: f64, t: f64) -> [f64; 9] {
    let c0 = ((2.0_f64) * t).sin();
    let c1 = x.powi(2);
    let c2 = y.powi(2);
    let c3 = (t + ((-1.0_f64) * z));
    let c4 = (((-1.0_f64) * c1) + ((-1.0_f64) * c2) + ((-1.0_f64) * c3.powi(2))).exp();
    let c5 = ((2.0_f64) * c4);
    let c6 = (c0 * c5 * y);
    let c7 = (c6 * x);
    let c8 = ((0.3032653298563167_f64) + ((-1.0_f64) * c4));
    [c7, (c0 * (c8 + (c2 * c5))), ((-1.0_f64) * c3 * c6), (c0 * (((-1.0_f64) * c8) + ((-1.0_f64) * c1 * c5))), ((-1.0_f64) * c7), (c0 * c3 * c5 * x), (0.0_f64), (0.0_f64), (0.0_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_kink_p_neg(x: f64, y: f64, z: f64, t: f64) -> [f64; 1] {
    [(2.8284271247461903_f64)]
}

#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_kink_g_neg(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = x.powi(2);
    let c1 = y.powi(2);
    let c2 = (t + ((-1.0_f64) * z));
    let c3 = c2.powi(2);
    let c4 = (((-1.0_f64) * c0) + ((-1.0_f64) * c1) + ((-1.0_f64) * c3)).exp();
    let c5 = ((-0.6065306597126334_f64) + ((2.0_f64) * c4));
    let c6 = ((2.0_f64) * t);
    let c7 = c6.cos();
    let c8 = (c4 * c6.sin());
    let c9 = ((8.0_f64) * c8);
    let c10 = (((-20.0_f64) * c8) + (c0 * c9) + (c1 * c9) + (c3 * c9) + ((5.0_f64) * c2 * c8));
    [((2.0_f64) * y * (c10 + ((-2.5_f64) * c5 * c7))), ((2.0_f64) * x * (((-1.0_f64) * c10) + ((2.5_f64) * c5 * c7))), (0.0_f64)]
}

/// Interface load correction.
#[allow(clippy::all, unused_variables, non_snake_case)]
pub fn sphere_kink_h(x: f64, y: f64, z: f64, t: f64) -> [f64; 3] {
    let c0 = x.powi(2);
    let c1 = y.powi(2);
    let c2 = (t + ((-1.0_f64) * z));
    let c3 = c2.powi(2);
    let c4 = (c0 + c1 + c3);
    let c5 = c4.exp();
    let c6 = ((2.0_f64) * c4.powi(2));
    let c7 = (c5 * c6);
    let c8 = c4.powf(2.5);
    let c9 = ((2.0_f64) * t).sin();
    let c10 = (c9 * y);
    let c11 = ((3.0_f64) * c10);
    let c12 = (c0 + ((-1.0_f64) * c1));
    let c13 = ((6.0_f64) * c10 * x);
    let c14 = (1.4142135623730951_f64);
    let c15 = (c14 * c5);
    let c16 = ((2.0_f64) * (1.0 / c4.powi(3)));
    let c17 = (c16 * ((-1.0_f64) * c4).exp());
    let c18 = ((3.0_f64) * c9 * x);
    [(c17 * ((c7 * x) + (c8 * ((c11 * c3) + (x * (c13 + ((-1.0_f64) * c15))) + ((-1.0_f64) * c11 * c12))))), (c17 * ((c7 * y) + ((-1.0_f64) * c8 * ((c12 * c18) + (c18 * c3) + (y * (c13 + c15)))))), (c16 * c2 * (((-1.0_f64) * c6) + (c14 * c8)))]
}
