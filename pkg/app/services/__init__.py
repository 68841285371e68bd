# -*- coding: utf-8 -*-
"""
app.services 包初始化文件。

此包存放数值处理流程：颜色分割 (imaging)、Zernike 矩 (zernike)、特征组装与归一化
(features)、最近邻分类 (classifier)、合成形状 (synthgen) 以及运行台账 (run_logger)。
各子模块按需导入，例如 `from app.services import classifier`。
(This package holds the numerical pipeline: color segmentation (imaging),
Zernike moments (zernike), feature assembly and normalization (features),
nearest-neighbor classification (classifier), synthetic shapes (synthgen) and
the run ledger (run_logger). Import submodules as needed, e.g.
`from app.services import classifier`.)
"""
