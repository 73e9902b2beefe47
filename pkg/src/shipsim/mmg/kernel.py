"""Compiled right-hand side of the low-speed MMG model.

The physics is the same as the per-component modules; this file folds every
parameter product into one flat constant vector and evaluates the derivative
in machine code, which keeps hour-long runs well inside real time. Tests check
it against :func:`shipsim.mmg.model.mmg_derivative` to round-off.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from ..kinematics import ZERO_SPEED_EPS
from .params import MmgParameters
from .propeller import N_EPS
from .rudder import fujii_lift_gradient

CONSTANT_NAMES = (
    "L", "L3_12", "L3_6", "half_L", "qH", "qHL", "X0F", "dX0", "XvrL", "Yv", "YrL", "Nv",
    "NrL", "CD_L", "CD_L2", "CrY", "CrN", "rho", "Dp", "one_w0", "tau_w", "Cp_w", "xpL",
    "k0", "k1", "k2", "thrust_fwd", "q2nd", "q2ndN", "rev_x", "q_rev", "q_revN", "C3", "C6",
    "C7", "C10", "eta", "eps_r", "kx_eps", "gP", "gN", "lR", "xR", "kxPR", "CPR", "qR",
    "cXR", "cYR", "cNR", "eight_pi", "qW", "AT", "AL", "ALL", "wX0", "wX1", "wX3", "wX5",
    "wY1", "wY3", "wY5", "wN1", "wN2", "wN3", "bow_k", "bow_cu", "bow_x", "st_k", "st_cu",
    "st_x", "m", "mx", "my", "m_mx", "m_my", "cpl", "r2_coef", "Iz", "det", "inv_mx",
    "a_yy", "a_yn", "a_ny", "a_nn", "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B1",
    "B2", "B3", "B4", "B5", "B6", "B7", "B8",
)


def pack_constants(params: MmgParameters) -> np.ndarray:
    g, ms, h, pp, rd_, wc, th = (
        params.geometry, params.mass, params.hull, params.propeller,
        params.rudder, params.wind, params.thrusters,
    )
    pi = math.pi
    L = g.L_pp
    L3_12 = L**3 / 12.0
    L3_6 = L**3 / 6.0
    half_L = 0.5 * L
    qH = 0.5 * g.rho * L * g.d
    qHL = qH * L
    X0F = h.X_0F
    dX0 = (h.X_0A - h.X_0F) / pi
    XvrL = h.X_vr * L
    Yv, YrL, Nv, NrL = h.Y_v, h.Y_r * L, h.N_v, h.N_r * L
    CD_L, CD_L2 = h.C_D / L, h.C_D / (L * L)
    CrY, CrN = h.C_rY, h.C_rN

    rho = g.rho
    Dp = pp.D_p
    one_w0 = 1.0 - pp.w_p0
    tau_w, Cp_w, xpL = pp.tau, pp.C_p, pp.x_p * L
    k0, k1, k2 = pp.k0, pp.k1, pp.k2
    thrust_fwd = rho * Dp * Dp * (1.0 - pp.t_p0)
    A, B = pp.A, pp.B
    A1, A2, A3, A4, A5, A6, A7, A8 = A
    B1, B2, B3, B4, B5, B6, B7, B8 = B
    q2nd = 0.5 * rho * L * g.d * pp.P * pp.P
    q2ndN = q2nd * L
    rev_x = rho * Dp**4
    q_rev = 0.5 * rho * L * g.d
    q_revN = q_rev * L
    C3, C6, C7, C10 = pp.C3, pp.C6, pp.C7, pp.C10

    eta = pp.D_p / rd_.H_R
    eps_r = rd_.epsilon
    kx_eps = rd_.k_x / eps_r
    gP, gN, lR, xR = rd_.gamma_P, rd_.gamma_N, rd_.l_R, rd_.x_R
    kxPR, CPR = rd_.k_xPR, rd_.C_PR
    qR = 0.5 * rho * rd_.A_R * fujii_lift_gradient(rd_.lambda_)
    cXR = 1.0 - rd_.t_R
    cYR = 1.0 + rd_.a_H
    cNR = rd_.x_R + rd_.a_H * rd_.x_H
    eight_pi = 8.0 / pi

    qW = 0.5 * g.rho_A
    AT, AL, ALL = g.A_T, g.A_L, g.A_L * g.L_OA
    wX0, wX1, wX3, wX5 = wc.X0, wc.X1, wc.X3, wc.X5
    wY1, wY3, wY5 = wc.Y1, wc.Y3, wc.Y5
    wN1, wN2, wN3 = wc.N1, wc.N2, wc.N3

    bow, stern = th.bow, th.stern
    bow_k = rho * bow.D**4 * bow.K_T if bow else 0.0
    bow_cu, bow_x = (bow.c_u, bow.x) if bow else (0.0, 0.0)
    st_k = rho * stern.D**4 * stern.K_T if stern else 0.0
    st_cu, st_x = (stern.c_u, stern.x) if stern else (0.0, 0.0)

    m, mx, my = ms.m, ms.m_x, ms.m_y
    m_mx, m_my = m + mx, m + my
    cpl = ms.coupling
    r2_coef = ms.x_G * m + my * ms.alpha_y
    Iz = ms.yaw_inertia
    det = ms.determinant
    inv_mx = 1.0 / m_mx
    a_yy, a_yn = Iz / det, cpl / det
    a_ny, a_nn = cpl / det, m_my / det


    local = locals()
    return np.array([float(local[name]) for name in CONSTANT_NAMES])


@njit(cache=True)
def _rates(y, delta, n_p, n_bt, n_st, U_T, gamma_T, p, out):
    sqrt, cos, sin, atan2, fabs, copysign = math.sqrt, math.cos, math.sin, math.atan2, math.fabs, math.copysign
    L = p[0]
    L3_12 = p[1]
    L3_6 = p[2]
    half_L = p[3]
    qH = p[4]
    qHL = p[5]
    X0F = p[6]
    dX0 = p[7]
    XvrL = p[8]
    Yv = p[9]
    YrL = p[10]
    Nv = p[11]
    NrL = p[12]
    CD_L = p[13]
    CD_L2 = p[14]
    CrY = p[15]
    CrN = p[16]
    rho = p[17]
    Dp = p[18]
    one_w0 = p[19]
    tau_w = p[20]
    Cp_w = p[21]
    xpL = p[22]
    k0 = p[23]
    k1 = p[24]
    k2 = p[25]
    thrust_fwd = p[26]
    q2nd = p[27]
    q2ndN = p[28]
    rev_x = p[29]
    q_rev = p[30]
    q_revN = p[31]
    C3 = p[32]
    C6 = p[33]
    C7 = p[34]
    C10 = p[35]
    eta = p[36]
    eps_r = p[37]
    kx_eps = p[38]
    gP = p[39]
    gN = p[40]
    lR = p[41]
    xR = p[42]
    kxPR = p[43]
    CPR = p[44]
    qR = p[45]
    cXR = p[46]
    cYR = p[47]
    cNR = p[48]
    eight_pi = p[49]
    qW = p[50]
    AT = p[51]
    AL = p[52]
    ALL = p[53]
    wX0 = p[54]
    wX1 = p[55]
    wX3 = p[56]
    wX5 = p[57]
    wY1 = p[58]
    wY3 = p[59]
    wY5 = p[60]
    wN1 = p[61]
    wN2 = p[62]
    wN3 = p[63]
    bow_k = p[64]
    bow_cu = p[65]
    bow_x = p[66]
    st_k = p[67]
    st_cu = p[68]
    st_x = p[69]
    m = p[70]
    mx = p[71]
    my = p[72]
    m_mx = p[73]
    m_my = p[74]
    cpl = p[75]
    r2_coef = p[76]
    Iz = p[77]
    det = p[78]
    inv_mx = p[79]
    a_yy = p[80]
    a_yn = p[81]
    a_ny = p[82]
    a_nn = p[83]
    A1 = p[84]
    A2 = p[85]
    A3 = p[86]
    A4 = p[87]
    A5 = p[88]
    A6 = p[89]
    A7 = p[90]
    A8 = p[91]
    B1 = p[92]
    B2 = p[93]
    B3 = p[94]
    B4 = p[95]
    B5 = p[96]
    B6 = p[97]
    B7 = p[98]
    B8 = p[99]

    psi = y[2]
    u = y[3]
    v = y[4]
    r = y[5]
    cpsi = cos(psi)
    spsi = sin(psi)
    U = sqrt(u * u + v * v)

    # hull
    X = qH * ((X0F + dX0 * fabs(atan2(v, u))) * u * U + XvrL * v * r)
    # cross-flow integrals, inlined (see hull.crossflow_integrals)
    if r == 0.0:
        IY = L * fabs(v) * v
        IN = 0.0
    else:
        b = CrY * r
        s1 = v - b * half_L
        s2 = v + b * half_L
        if s1 * s2 >= 0.0:
            IY = (v * v * L + b * b * L3_12) if s1 + s2 > 0 else -(v * v * L + b * b * L3_12)
        else:
            IY = (fabs(s2) * s2 * s2 - fabs(s1) * s1 * s1) / (3.0 * b)
        b = CrN * r
        s1 = v - b * half_L
        s2 = v + b * half_L
        if s1 * s2 >= 0.0:
            IN = v * b * L3_6 if s1 + s2 > 0 else -v * b * L3_6
        else:
            q2 = fabs(s2) * s2 * s2
            q1 = fabs(s1) * s1 * s1
            IN = ((q2 * s2 - q1 * s1) * 0.25 - v * (q2 - q1) / 3.0) / (b * b)
    au = fabs(u)
    Y = qH * (Yv * v * au + YrL * r * u - CD_L * IY)
    N = qHL * (Nv * v * u + NrL * r * au - CD_L2 * IN)

    # propeller wake
    if u < 0.0:
        omw = 1.0
    elif U < ZERO_SPEED_EPS:
        omw = one_w0
    else:
        bp = (v + xpL * r) / U
        omw = max(0.0, one_w0 + tau_w * fabs(bp) + Cp_w * bp * bp)
    u_p = omw * u

    # propeller and rudder inflow
    fwd = n_p >= 0.0 or -n_p < N_EPS
    if fwd:
        if n_p < N_EPS:
            load = 0.0
        else:
            nD = n_p * Dp
            load = k0 * nD * nD + k1 * u_p * nD + k2 * u_p * u_p
            X += thrust_fwd * load
            if u < 0.0:
                Js = u / nD
                nP2 = n_p * n_p
                Y += q2nd * nP2 * ((A6 * Js + A7) * Js + A8)
                N += q2ndN * nP2 * ((B6 * Js + B7) * Js + B8)
        jet = sqrt(max(0.0, u_p * u_p + eight_pi * load))
        inner = u_p + kx_eps * (jet - u_p)
        u_R = eps_r * sqrt(eta * inner * inner + (1.0 - eta) * u_p * u_p)
    else:
        nD = n_p * Dp
        Js = u / nD
        nD2 = nD * nD
        X += rev_x * n_p * n_p * (C6 + C7 * Js if Js >= C10 else C3)
        if Js < -0.35:
            cy, cn = A3 + A4 * Js, B3 + B4 * Js
        elif Js <= -0.06:
            cy, cn = A1 + A2 * Js, B1 + B2 * Js
        else:
            cy, cn = A5, B5
        Y += q_rev * nD2 * cy
        N += q_revN * nD2 * cn
        if u >= 0.0:
            Jp = u_p / nD
            KT = k0 + k1 * Jp + k2 * Jp * Jp
            r2 = u * eps_r * omw
            r1 = r2 + nD * kxPR * sqrt(eight_pi * fabs(KT))
            usq = eta * r1 * fabs(r1) + (1.0 - eta) * r2 * fabs(r2) + CPR * u
            u_R = copysign(sqrt(fabs(usq)), usq)
        else:
            u_R = u

    # rudder; U_R^2 sin(alpha_R) expanded so no angle is formed
    v_R = -(gP if v + xR * r >= 0.0 else gN) * (v + lR * r)
    sd = sin(delta)
    cd = cos(delta)
    FN = qR * sqrt(u_R * u_R + v_R * v_R) * (sd * u_R - cd * v_R)
    X -= cXR * FN * sd
    Y -= cYR * FN * cd
    N -= cNR * FN * cd

    # thrusters
    if n_bt != 0.0 and bow_k != 0.0:
        fade = 1.0 - bow_cu * au
        if fade > 0.0:
            F = bow_k * n_bt * fabs(n_bt) * fade
            Y += F
            N += F * bow_x
    if n_st != 0.0 and st_k != 0.0:
        fade = 1.0 - st_cu * au
        if fade > 0.0:
            F = st_k * n_st * fabs(n_st) * fade
            Y += F
            N += F * st_x

    # wind; with no true wind the apparent wind is the ship's own motion
    if U_T != 0.0:
        rel = gamma_T - psi
        ax = U_T * cos(rel) + u
        ay = U_T * sin(rel) + v
    else:
        ax, ay = u, v
    UA2 = ax * ax + ay * ay
    if UA2 > 0.0:
        # harmonics of (2 pi - gamma_A) from its cosine and sine
        UA = sqrt(UA2)
        c1 = ax / UA
        s1 = -ay / UA
        c2 = c1 * c1 - s1 * s1
        s2 = 2.0 * s1 * c1
        c3 = c2 * c1 - s2 * s1
        s3 = s2 * c1 + c2 * s1
        c5 = c3 * c2 - s3 * s2
        s5 = s3 * c2 + c3 * s2
        qa = qW * UA2
        X += qa * AT * (wX0 + wX1 * c1 + wX3 * c3 + wX5 * c5)
        Y += qa * AL * (wY1 * s1 + wY3 * s3 + wY5 * s5)
        N += qa * ALL * (wN1 * s1 + wN2 * s2 + wN3 * s3)

    rx = X + m_my * v * r + r2_coef * r * r
    ry = Y - m_mx * u * r
    rn = N - cpl * u * r
    out[0] = u * cpsi - v * spsi
    out[1] = u * spsi + v * cpsi
    out[2] = r
    out[3] = rx * inv_mx
    out[4] = a_yy * ry - a_yn * rn
    out[5] = a_nn * rn - a_ny * ry


@njit(cache=True)
def mmg_rates(y, delta, n_p, n_bt, n_st, U_T, gamma_T, p):
    """State derivative for ``y = [x0, y0, psi, u, v_m, r]``."""
    out = np.empty(6)
    _rates(y, delta, n_p, n_bt, n_st, U_T, gamma_T, p, out)
    return out


@njit(cache=True)
def mmg_rk4(y, h, delta, n_p, n_bt, n_st, U_T, gamma_T, p):
    """One classical RK4 step with inputs held; returns the new state."""
    k1 = np.empty(6)
    k2 = np.empty(6)
    k3 = np.empty(6)
    k4 = np.empty(6)
    tmp = np.empty(6)
    _rates(y, delta, n_p, n_bt, n_st, U_T, gamma_T, p, k1)
    for i in range(6):
        tmp[i] = y[i] + 0.5 * h * k1[i]
    _rates(tmp, delta, n_p, n_bt, n_st, U_T, gamma_T, p, k2)
    for i in range(6):
        tmp[i] = y[i] + 0.5 * h * k2[i]
    _rates(tmp, delta, n_p, n_bt, n_st, U_T, gamma_T, p, k3)
    for i in range(6):
        tmp[i] = y[i] + h * k3[i]
    _rates(tmp, delta, n_p, n_bt, n_st, U_T, gamma_T, p, k4)
    out = np.empty(6)
    for i in range(6):
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
    return out
