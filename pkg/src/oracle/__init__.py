"""数値オラクル: 等位曲線 g = rho の位相から IR を推定する"""
