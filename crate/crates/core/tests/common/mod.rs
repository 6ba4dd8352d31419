#![allow(dead_code)]

use conceptq_core::hilbert::DisjunctionData;

/// Fruits (A), Vegetables (B) and "Fruits or Vegetables" weights.
pub const TABLE1: [(&str, f64, f64, f64); 24] = [
    ("Almond", 0.0359, 0.0133, 0.0269),
    ("Acorn", 0.0425, 0.0108, 0.0249),
    ("Peanut", 0.0372, 0.0220, 0.0269),
    ("Olive", 0.0586, 0.0269, 0.0415),
    ("Coconut", 0.0755, 0.0125, 0.0604),
    ("Raisin", 0.1026, 0.0170, 0.0555),
    ("Elderberry", 0.1138, 0.0170, 0.0480),
    ("Apple", 0.1184, 0.0155, 0.0688),
    ("Mustard", 0.0149, 0.0250, 0.0146),
    ("Wheat", 0.0136, 0.0255, 0.0165),
    ("Root Ginger", 0.0157, 0.0323, 0.0385),
    ("Chili Pepper", 0.0167, 0.0446, 0.0323),
    ("Garlic", 0.0100, 0.0301, 0.0293),
    ("Mushroom", 0.0140, 0.0545, 0.0604),
    ("Watercress", 0.0112, 0.0658, 0.0482),
    ("Lentils", 0.0095, 0.0713, 0.0338),
    ("Green Pepper", 0.0324, 0.0788, 0.0506),
    ("Yam", 0.0533, 0.0724, 0.0541),
    ("Tomato", 0.0881, 0.0679, 0.0688),
    ("Pumpkin", 0.0797, 0.0713, 0.0579),
    ("Broccoli", 0.0143, 0.1284, 0.0642),
    ("Rice", 0.0140, 0.0412, 0.0248),
    ("Parsley", 0.0155, 0.0266, 0.0308),
    ("Black Pepper", 0.0127, 0.0294, 0.0222),
];

/// Published lambda column.
pub const LAMBDA: [f64; 24] = [
    0.0218, -0.0214, -0.0285, 0.0397, 0.0261, 0.0415, -0.0404, 0.0428, -0.0186, 0.0183, 0.0173,
    -0.0272, -0.0147, 0.0088, -0.0254, 0.0252, -0.0503, 0.0615, 0.0768, -0.0733, -0.0422, -0.0238,
    -0.0178, 0.0193,
];

/// Published phase column, degrees.
pub const THETA: [f64; 24] = [
    83.8854, -94.5520, -95.3620, 91.8715, 57.9533, 95.8648, -113.2431, 87.6039, -105.9806, 99.3810,
    50.0889, -86.4374, -57.6399, 18.6744, -69.0705, 104.7126, -95.6518, 98.0833, 100.7557,
    -103.4804, -99.6048, -96.6635, -61.1698, 86.6308,
];

/// Published |A> components.
pub const VEC_A: [f64; 24] = [
    0.1895, 0.2061, 0.1929, 0.2421, 0.2748, 0.3204, 0.3373, 0.3441, 0.1222, 0.1165, 0.1252, 0.1291,
    0.1002, 0.1182, 0.1059, 0.0974, 0.1800, 0.2308, 0.2967, 0.2823, 0.1194, 0.1181, 0.1245, 0.1128,
];

pub fn table1() -> DisjunctionData {
    DisjunctionData::new(
        TABLE1.iter().map(|r| r.0.to_string()).collect(),
        TABLE1.iter().map(|r| r.1).collect(),
        TABLE1.iter().map(|r| r.2).collect(),
        TABLE1.iter().map(|r| r.3).collect(),
    )
    .unwrap()
}

pub fn index_of(label: &str) -> usize {
    TABLE1.iter().position(|r| r.0 == label).unwrap()
}
