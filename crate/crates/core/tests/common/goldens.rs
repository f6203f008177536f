// GENERATED FILE - do not edit by hand.
//
// Frozen reference values produced by tools/reference_values.py (an
// independent NumPy/SciPy implementation: generalized-eigenproblem RHF,
// brute-force determinant FCI, closed-form Gaussian electrostatics).
// The script validates itself against scipy quadrature and published
// STO-3G/H2 tables before emitting these numbers; see tools/ for detail.
//
// Regenerate with:  python3 tools/reference_values.py
#![allow(dead_code)]
#![allow(clippy::excessive_precision)]

pub mod h2 {
    pub const POSITIONS: [[f64; 3]; 2] = [[0.0, 0.0, 0.0], [0.0, 0.0, 1.4]];
    pub const CHARGE: i32 = 0;
    pub const E_NUC: f64 = 0.7142857142857143;
    pub const OVERLAP: [[f64; 2]; 2] = [[1.0, 0.659318206134864], [0.659318206134864, 1.0]];
    pub const KINETIC: [[f64; 2]; 2] = [[0.7600318835666088, 0.236454655979674], [0.236454655979674, 0.7600318835666088]];
    pub const CORE_H: [[f64; 2]; 2] = [[-1.1204090089068366, -0.9583799643896153], [-0.9583799643896153, -1.1204090089068366]];
    pub const DIPOLE_X: [[f64; 2]; 2] = [[0.0, 0.0], [0.0, 0.0]];
    pub const DIPOLE_Y: [[f64; 2]; 2] = [[0.0, 0.0], [0.0, 0.0]];
    pub const DIPOLE_Z: [[f64; 2]; 2] = [[0.0, 0.46152274429440476], [0.46152274429440476, 1.4]];
    pub const ERI: [(usize, usize, usize, usize, f64); 6] = [
        (0, 0, 0, 0, 0.7746059439198977),
        (1, 0, 0, 0, 0.44410765803196034),
        (1, 0, 1, 0, 0.29702854027693154),
        (1, 1, 0, 0, 0.5696759256037445),
        (1, 1, 1, 0, 0.44410765803196034),
        (1, 1, 1, 1, 0.7746059439198977),
    ];
    pub const E_RHF: f64 = -1.1167143250625702;
    pub const MO_ENERGIES: [f64; 2] = [-0.5782029775124583, 0.6702677682736697];
    pub const RHF_DENSITY_AO: [[f64; 2]; 2] = [[0.6026571614189368, 0.6026571614189371], [0.6026571614189371, 0.6026571614189374]];
    pub const MO_COEFF_ABS: [[f64; 2]; 2] = [[0.5489340403996352, 1.2114640735434787], [0.5489340403996356, 1.2114640735434787]];
    pub const E_FCI: f64 = -1.1372759436170647;
    pub const FCI_RDM1_MO: [[f64; 2]; 2] = [[1.974590409815239, 2.041382506581691e-16], [2.041382506581691e-16, 0.025409590184760678]];
    pub const DIPOLE_RHF_AU: [f64; 3] = [0.0, 0.0, -4.440892098500626e-16];
    pub const DIPOLE_FCI_AU: [f64; 3] = [0.0, 0.0, 0.0];
    pub const MULLIKEN_POPS_FCI: [f64; 2] = [0.9999999999999997, 0.9999999999999998];
    pub const MULLIKEN_CHARGES_FCI: [f64; 2] = [3.3306690738754696e-16, 2.220446049250313e-16];
    /// (point, density, gradient, laplacian) for the FCI density.
    pub const DENSITY_SAMPLES: [([f64; 3], f64, [f64; 3], f64); 4] = [
        ([0.0, 0.0, 0.7], 0.2526751753812615, [0.0, 0.0, 0.0], -0.7727942008539657),
        ([0.0, 0.0, 0.0], 0.35930459299092066, [0.0, 0.0, 0.14843944947939836], -6.4694555990119085),
        ([0.3, -0.2, 1.0], 0.22478901287234013, [-0.27386339176149743, 0.1825755944956375, 0.1371871213295961], -0.9233338177372374),
        ([1.0, 1.0, 2.0], 0.014392654084577912, [-0.021447957288759503, -0.021447957288759503, -0.01737742220779548], 0.03984624626779398),
    ];
    /// (point, exact electrostatic potential) for the FCI density.
    pub const ESP_SAMPLES: [([f64; 3], f64); 4] = [
        ([0.0, 0.0, 0.7], 0.8963277868556822),
        ([2.0, 0.0, 0.7], 0.006004774850341399),
        ([0.0, 0.0, 5.0], 0.003881953251264836),
        ([-3.0, 1.0, -2.0], 0.0005806198121906248),
    ];
    pub const NCP_Z: f64 = 0.07602195739645484;
    pub const BCP_Z: f64 = 0.7;
    pub const BCP_RHO: f64 = 0.2526751753812615;
    pub const BCP_LAPLACIAN: f64 = -0.7727942008539657;
    pub const NCP_RHO: f64 = 0.36490834128322847;
}

pub mod h3p_ring {
    pub const POSITIONS: [[f64; 3]; 3] = [[0.0, 0.0, 0.0], [1.65, 0.0, 0.0], [0.825, 1.4289419162443235, 0.0]];
    pub const CHARGE: i32 = 1;
    pub const E_NUC: f64 = 1.8181818181818186;
    pub const OVERLAP: [[f64; 3]; 3] = [[1.0, 0.5740331714459332, 0.5740331714459334], [0.5740331714459332, 1.0, 0.5740331714459334], [0.5740331714459334, 0.5740331714459334, 1.0]];
    pub const KINETIC: [[f64; 3]; 3] = [[0.7600318835666088, 0.1652721829208899, 0.16527218292088994], [0.1652721829208899, 0.7600318835666088, 0.16527218292088994], [0.16527218292088994, 0.16527218292088994, 0.7600318835666088]];
    pub const CORE_H: [[f64; 3]; 3] = [[-1.6174314945617416, -1.1621066753902702, -1.1621066753902702], [-1.1621066753902702, -1.6174314945617416, -1.1621066753902702], [-1.1621066753902702, -1.1621066753902702, -1.6174314945617416]];
    pub const DIPOLE_X: [[f64; 3]; 3] = [[0.0, 0.473577366442895, 0.2367886832214475], [0.473577366442895, 1.65, 0.7103660496643426], [0.2367886832214475, 0.7103660496643426, 0.825]];
    pub const DIPOLE_Y: [[f64; 3]; 3] = [[0.0, 0.0, 0.4101300299968792], [0.0, 0.0, 0.4101300299968792], [0.4101300299968792, 0.4101300299968792, 1.4289419162443233]];
    pub const DIPOLE_Z: [[f64; 3]; 3] = [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]];
    pub const ERI: [(usize, usize, usize, usize, f64); 21] = [
        (0, 0, 0, 0, 0.7746059439198977),
        (1, 0, 0, 0, 0.3717508728424888),
        (1, 0, 1, 0, 0.21788468832724112),
        (1, 1, 0, 0, 0.5212346910432322),
        (1, 1, 1, 0, 0.3717508728424888),
        (1, 1, 1, 1, 0.7746059439198977),
        (2, 0, 0, 0, 0.3717508728424889),
        (2, 0, 1, 0, 0.19994067943870436),
        (2, 0, 1, 1, 0.3100501394843497),
        (2, 0, 2, 0, 0.21788468832724114),
        (2, 1, 0, 0, 0.3100501394843497),
        (2, 1, 1, 0, 0.19994067943870436),
        (2, 1, 1, 1, 0.37175087284248887),
        (2, 1, 2, 0, 0.19994067943870433),
        (2, 1, 2, 1, 0.21788468832724114),
        (2, 2, 0, 0, 0.5212346910432322),
        (2, 2, 1, 0, 0.3100501394843497),
        (2, 2, 1, 1, 0.5212346910432322),
        (2, 2, 2, 0, 0.37175087284248887),
        (2, 2, 2, 1, 0.37175087284248887),
        (2, 2, 2, 2, 0.7746059439198977),
    ];
    pub const E_RHF: f64 = -1.237547699944469;
    pub const MO_ENERGIES: [f64; 3] = [-1.2207560042096817, -0.02139523896854309, -0.021395238968542007];
    pub const RHF_DENSITY_AO: [[f64; 3]; 3] = [[0.3103566465126761, 0.3103566465126756, 0.3103566465126756], [0.3103566465126756, 0.31035664651267514, 0.31035664651267514], [0.3103566465126756, 0.31035664651267514, 0.31035664651267514]];
    pub const E_FCI: f64 = -1.2620406057239622;
    pub const FCI_RDM1_MO: [[f64; 3]; 3] = [[1.971401445361843, -5.82255161864312e-17, 5.556576376050129e-17], [-5.82255161864312e-17, 0.01429927731907848, -3.748872720885796e-18], [5.556576376050129e-17, -3.748872720885797e-18, 0.01429927731907843]];
    pub const DIPOLE_RHF_AU: [f64; 3] = [9.992007221626409e-16, 6.661338147750939e-16, 0.0];
    pub const DIPOLE_FCI_AU: [f64; 3] = [9.992007221626409e-16, 7.771561172376096e-16, 0.0];
    pub const MULLIKEN_POPS_FCI: [f64; 3] = [0.6666666666666672, 0.6666666666666662, 0.666666666666666];
    pub const MULLIKEN_CHARGES_FCI: [f64; 3] = [0.3333333333333328, 0.3333333333333338, 0.33333333333333404];
    /// (point, exact electrostatic potential) for the FCI density.
    pub const ESP_SAMPLES: [([f64; 3], f64); 2] = [
        ([0.0, 0.0, 30.0], 0.033289552476771046),
        ([10.0, 5.0, 8.0], 0.07696300720595924),
    ];
    pub const CENTROID_X: f64 = 0.8249999999999998;
    pub const CENTROID_Y: f64 = 0.47631397208144116;
}

pub mod h3p_chain {
    pub const POSITIONS: [[f64; 3]; 3] = [[0.0, 0.0, 0.0], [0.0, 0.0, 1.6], [0.0, 0.0, 3.4]];
    pub const CHARGE: i32 = 1;
    pub const E_NUC: f64 = 1.4746732026143792;
    pub const OVERLAP: [[f64; 3]; 3] = [[1.0, 0.5908155417414023, 0.16429510291586996], [0.5908155417414023, 1.0, 0.5248784826001737], [0.16429510291586996, 0.5248784826001737, 1.0]];
    pub const KINETIC: [[f64; 3]; 3] = [[0.7600318835666088, 0.17828875515024026, -0.006149721388378466], [0.17828875515024026, 0.7600318835666088, 0.12988127394276472], [-0.006149721388378466, 0.12988127394276472, 0.7600318835666088]];
    pub const CORE_H: [[f64; 3]; 3] = [[-1.3503558804370397, -1.0678531814078083, -0.3216724811622113], [-1.0678531814078083, -1.5915254518151642, -0.9412240110629223], [-0.32167248116221137, -0.9412240110629223, -1.2953778941966352]];
    pub const DIPOLE_X: [[f64; 3]; 3] = [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]];
    pub const DIPOLE_Y: [[f64; 3]; 3] = [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]];
    pub const DIPOLE_Z: [[f64; 3]; 3] = [[0.0, 0.4726524333931219, 0.2793016749569789], [0.4726524333931219, 1.6, 1.3121962065004342], [0.2793016749569789, 1.3121962065004342, 3.4]];
    pub const ERI: [(usize, usize, usize, usize, f64); 21] = [
        (0, 0, 0, 0, 0.7746059439198977),
        (1, 0, 0, 0, 0.3856846416127424),
        (1, 0, 1, 0, 0.2323443889841597),
        (1, 1, 0, 0, 0.5306805946767449),
        (1, 1, 1, 0, 0.3856846416127423),
        (1, 1, 1, 1, 0.7746059439198977),
        (2, 0, 0, 0, 0.08113810103352066),
        (2, 0, 1, 0, 0.053595997490479545),
        (2, 0, 1, 1, 0.10007732230814027),
        (2, 0, 2, 0, 0.014412929905812994),
        (2, 1, 0, 0, 0.20391772278906303),
        (2, 1, 1, 0, 0.15404477156082996),
        (2, 1, 1, 1, 0.3317989042753997),
        (2, 1, 2, 0, 0.0477735260452307),
        (2, 1, 2, 1, 0.1785656478561563),
        (2, 2, 0, 0, 0.2920517097398312),
        (2, 2, 1, 0, 0.22182070081165794),
        (2, 2, 1, 1, 0.49377843854819325),
        (2, 2, 2, 0, 0.08113810103352068),
        (2, 2, 2, 1, 0.3317989042753997),
        (2, 2, 2, 2, 0.7746059439198977),
    ];
    pub const E_RHF: f64 = -1.202303229497943;
    pub const MO_ENERGIES: [f64; 3] = [-1.0406924454993904, -0.3294171289878494, 0.39099888575262376];
    pub const RHF_DENSITY_AO: [[f64; 3]; 3] = [[0.22826709031635542, 0.3921134229445031, 0.20847452324860727], [0.3921134229445031, 0.6735659364657801, 0.35811407940778256], [0.20847452324860727, 0.35811407940778256, 0.19039812871623593]];
    pub const MO_COEFF_ABS: [[f64; 3]; 3] = [[0.337836565750627, 0.7192913949708816, 0.9885646582573743], [0.5803300511199554, 0.02545874718632662, 1.3502415943598467], [0.3085434561907252, 0.8226508517644684, 0.8206499094623046]];
    pub const MO_COEFF: [[f64; 3]; 3] = [[0.337836565750627, -0.7192913949708816, -0.9885646582573743], [0.5803300511199554, -0.02545874718632662, 1.3502415943598467], [0.3085434561907252, 0.8226508517644684, -0.8206499094623046]];
    pub const E_FCI: f64 = -1.2331920606498366;
    pub const FCI_RDM1_MO: [[f64; 3]; 3] = [[1.9412341037370928, 0.013619043545425216, -0.03772575622486417], [0.013619043545425216, 0.05219539159841376, 0.0026817198171664694], [-0.03772575622486417, 0.00268171981716647, 0.006570504664495537]];
    pub const DIPOLE_RHF_AU: [f64; 3] = [0.0, 0.0, 0.181321030266268];
    pub const DIPOLE_FCI_AU: [f64; 3] = [0.0, 0.0, 0.1432700471723931];
    pub const MULLIKEN_POPS_FCI: [f64; 3] = [0.5279973941087654, 1.008191985482922, 0.4638106204083141];
    pub const MULLIKEN_CHARGES_FCI: [f64; 3] = [0.47200260589123455, -0.008191985482921993, 0.5361893795916859];
    /// (point, density, gradient, laplacian) for the FCI density.
    pub const DENSITY_SAMPLES: [([f64; 3], f64, [f64; 3], f64); 2] = [
        ([0.0, 0.0, 0.8], 0.14199584015688627, [0.0, 0.0, 0.08462377186491121], -0.20453398141828671),
        ([0.1, -0.2, 2.5], 0.10182593867443512, [-0.02589927091470323, 0.051798541832182014, -0.06562473135046654], -0.06545588099315935),
    ];
    /// (point, exact electrostatic potential) for the FCI density.
    pub const ESP_SAMPLES: [([f64; 3], f64); 2] = [
        ([0.0, 0.0, 25.0], 0.0434028366547979),
        ([1.0, 2.0, 2.0], 0.35232078818619217),
    ];
}

pub mod h4_chain {
    pub const POSITIONS: [[f64; 3]; 4] = [[0.0, 0.0, 0.0], [0.0, 0.0, 1.8], [0.0, 0.0, 3.6], [0.0, 0.0, 5.4]];
    pub const CHARGE: i32 = 0;
    pub const E_NUC: f64 = 2.4074074074074074;
    pub const OVERLAP: [[f64; 4]; 4] = [[1.0, 0.5248784826001737, 0.1390450556455024, 0.024556959229520774], [0.5248784826001737, 1.0, 0.5248784826001737, 0.13904505564550232], [0.1390450556455024, 0.5248784826001737, 1.0, 0.5248784826001734], [0.024556959229520774, 0.13904505564550232, 0.5248784826001734, 1.0]];
    pub const KINETIC: [[f64; 4]; 4] = [[0.7600318835666088, 0.1298812739427647, -0.00866066535762355, -0.007867395221968], [0.1298812739427647, 0.7600318835666088, 0.1298812739427647, -0.008660665357623554], [-0.00866066535762355, 0.1298812739427647, 0.7600318835666088, 0.12988127394276464], [-0.007867395221968, -0.008660665357623554, 0.12988127394276464, 0.7600318835666088]];
    pub const CORE_H: [[f64; 4]; 4] = [[-1.4643570169519218, -1.0433733067104174, -0.3081580178362146, -0.058178847495574636], [-1.0433733067104172, -1.8141549722955035, -1.1228623211428976, -0.30815801783621444], [-0.3081580178362146, -1.1228623211428974, -1.8141549722955035, -1.0433733067104167], [-0.058178847495574636, -0.30815801783621444, -1.043373306710417, -1.4643570169519218]];
    pub const DIPOLE_X: [[f64; 4]; 4] = [[0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]];
    pub const DIPOLE_Y: [[f64; 4]; 4] = [[0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]];
    pub const DIPOLE_Z: [[f64; 4]; 4] = [[0.0, 0.47239063434015627, 0.2502811001619043, 0.06630378991970609], [0.47239063434015627, 1.8, 1.4171719030204688, 0.5005622003238084], [0.2502811001619043, 1.4171719030204688, 3.6, 2.361953171700781], [0.06630378991970609, 0.5005622003238084, 2.3619531717007813, 5.4]];
    pub const ERI: [(usize, usize, usize, usize, f64); 55] = [
        (0, 0, 0, 0, 0.7746059439198977),
        (1, 0, 0, 0, 0.3317989042753997),
        (1, 0, 1, 0, 0.17856564785615628),
        (1, 1, 0, 0, 0.4937784385481932),
        (1, 1, 1, 0, 0.3317989042753997),
        (1, 1, 1, 1, 0.7746059439198977),
        (2, 0, 0, 0, 0.06677456797572412),
        (2, 0, 1, 0, 0.039560009082391254),
        (2, 0, 1, 1, 0.08347714254232216),
        (2, 0, 2, 0, 0.01012880253556125),
        (2, 1, 0, 0, 0.19117516964542275),
        (2, 1, 1, 0, 0.1325046811692453),
        (2, 1, 1, 1, 0.3317989042753997),
        (2, 1, 2, 0, 0.03956000908239126),
        (2, 1, 2, 1, 0.17856564785615625),
        (2, 2, 0, 0, 0.27644634439508814),
        (2, 2, 1, 0, 0.1911751696454227),
        (2, 2, 1, 1, 0.4937784385481932),
        (2, 2, 2, 0, 0.06677456797572415),
        (2, 2, 2, 1, 0.33179890427539965),
        (2, 2, 2, 2, 0.7746059439198977),
        (3, 0, 0, 0, 0.00915621879010996),
        (3, 0, 1, 0, 0.005757633407976819),
        (3, 0, 1, 1, 0.012911393237135419),
        (3, 0, 2, 0, 0.0016162377964351032),
        (3, 0, 2, 1, 0.006797052584526938),
        (3, 0, 2, 2, 0.012911393237135423),
        (3, 0, 3, 0, 0.0002812036585941437),
        (3, 1, 0, 0, 0.039881303726191746),
        (3, 1, 1, 0, 0.02703248959997412),
        (3, 1, 1, 1, 0.06677456797572409),
        (3, 1, 2, 0, 0.008545551178081014),
        (3, 1, 2, 1, 0.03956000908239124),
        (3, 1, 2, 2, 0.08347714254232211),
        (3, 1, 3, 0, 0.0016162377964351019),
        (3, 1, 3, 1, 0.01012880253556124),
        (3, 2, 0, 0, 0.11742483908423641),
        (3, 2, 1, 0, 0.07759795968605168),
        (3, 2, 1, 1, 0.1911751696454226),
        (3, 2, 2, 0, 0.02703248959997412),
        (3, 2, 2, 1, 0.13250468116924527),
        (3, 2, 2, 2, 0.3317989042753996),
        (3, 2, 3, 0, 0.005757633407976816),
        (3, 2, 3, 1, 0.03956000908239123),
        (3, 2, 3, 2, 0.1785656478561562),
        (3, 3, 0, 0, 0.18516565159400133),
        (3, 3, 1, 0, 0.11742483908423644),
        (3, 3, 1, 1, 0.27644634439508814),
        (3, 3, 2, 0, 0.03988130372619175),
        (3, 3, 2, 1, 0.1911751696454227),
        (3, 3, 2, 2, 0.4937784385481932),
        (3, 3, 3, 0, 0.009156218790109966),
        (3, 3, 3, 1, 0.06677456797572408),
        (3, 3, 3, 2, 0.33179890427539965),
        (3, 3, 3, 3, 0.7746059439198977),
    ];
    pub const E_RHF: f64 = -2.1134289151264696;
    pub const MO_ENERGIES: [f64; 4] = [-0.6485943090044823, -0.39102762741398167, 0.32293807432550403, 0.9492042541419778];
    pub const RHF_DENSITY_AO: [[f64; 4]; 4] = [[0.7086185114143331, 0.6375811033703113, -0.17657194996989284, -0.4087005179311521], [0.6375811033703113, 0.6509356525158891, 0.057689518820783534, -0.17657194996989337], [-0.17657194996989284, 0.057689518820783534, 0.65093565251589, 0.6375811033703116], [-0.4087005179311521, -0.17657194996989337, 0.6375811033703116, 0.7086185114143334]];
    pub const MO_COEFF_ABS: [[f64; 4]; 4] = [[0.27382384551166356, 0.5285165629726009, 0.7777151793627222, 0.6897989289746087], [0.42089938564242185, 0.3851123646726711, 0.5287826284957554, 1.1840801015473488], [0.4208993856424222, 0.38511236467267135, 0.5287826284957563, 1.184080101547348], [0.27382384551166317, 0.5285165629726012, 0.7777151793627223, 0.6897989289746076]];
    pub const E_FCI: f64 = -2.175411140950753;
    pub const FCI_RDM1_MO: [[f64; 4]; 4] = [[1.9715015036982477, -1.553288359064501e-19, -0.01215416598337349, 2.9068482849163567e-16], [-1.5532883590644857e-19, 1.9189983896652623, -7.425832353717872e-16, 0.0097007452977603], [-0.01215416598337349, -7.425832353717872e-16, 0.08570216958812361, -4.3236337118673576e-17], [2.906848284916356e-16, 0.009700745297760301, -4.323633711867357e-17, 0.023797937048366916]];
    pub const DIPOLE_RHF_AU: [f64; 3] = [0.0, 0.0, -3.9968028886505635e-15];
    pub const DIPOLE_FCI_AU: [f64; 3] = [0.0, 0.0, 1.3322676295501878e-15];
    pub const MULLIKEN_POPS_FCI: [f64; 4] = [1.0079116258198555, 0.9920883741801452, 0.9920883741801458, 1.0079116258198546];
    pub const MULLIKEN_CHARGES_FCI: [f64; 4] = [-0.007911625819855495, 0.007911625819854828, 0.007911625819854162, -0.007911625819854606];
    pub const FROZEN0_E_CORE: f64 = -0.8677451481334864;
    pub const FROZEN0_ACTIVE12_E_FCI: f64 = -2.135938333226043;
    pub const FROZEN0_H_TILDE: [[f64; 2]; 2] = [[-0.8546561395785535, 2.341576917782291e-16], [2.0796344017191574e-16, -0.45442924633904025]];
}
