#pragma once

// Frozen K_0, K_1 reference values from a 100-digit ascending-series
// evaluation (tests/oracle/make_bessel_table.cpp regenerates them).
// Rows: Re w, Im w, Re K_0, Im K_0, Re K_1, Im K_1.
// The first 40 rows are on the positive real axis, log-spaced over [1e-3, 30].

#include <array>

namespace diracshell {

struct BesselReference {
  double w_re, w_im;
  double k0_re, k0_im;
  double k1_re, k1_im;
};

inline constexpr std::array<BesselReference, 80> kBesselReference{{
    {0.001, 0, 7.0236888005623817, 0, 999.99623815608561, 0},
    {0.0013025607302937147, 0, 6.7593579663925407, 0, 767.71379513993509, 0},
    {0.0016966644561032956, 0, 6.4950279495588488, 0, 589.38579647674908, 0},
    {0.0022100084930052975, 0, 6.2306992650539801, 0, 452.47951143395812, 0},
    {0.0028786702766042918, 0, 5.9663727487382516, 0, 347.37330481115981, 0},
    {0.0037496428577684961, 0, 5.7020497544674029, 0, 266.6804381520173, 0},
    {0.0048841375391555451, 0, 5.4377324701554048, 0, 204.72993860123179, 0},
    {0.0063618857598573934, 0, 5.1734244228163133, 0, 157.16805148992063, 0},
    {0.0082867425614050298, 0, 4.9091312825040223, 0, 120.65226733665263, 0},
    {0.010793985442539747, 0, 4.644862136515167, 0, 92.616420101901227, 0},
    {0.014059821560814294, 0, 4.3806314989550046, 0, 71.090348483374996, 0},
    {0.018313771440053587, 0, 4.116462461991155, 0, 54.561446835761259, 0},
    {0.023854799501388382, 0, 3.8523916046092812, 0, 41.868376453240217, 0},
    {0.031072325059538584, 0, 3.5884765792692632, 0, 32.1194683835419, 0},
    {0.040473590421476281, 0, 3.3248077280494992, 0, 24.630084507589292, 0},
    {0.052719309497006858, 0, 3.0615256680282394, 0, 18.87453627675238, 0},
    {0.068670102279001596, 0, 2.7988475448815673, 0, 14.449183861812299, 0},
    {0.089446978573880426, 0, 2.537105548833932, 0, 11.044124347709337, 0},
    {0.11651012173375998, 0, 2.2768021693742946, 0, 8.4214810165459006, 0},
    {0.15176150925213594, 0, 2.0186871575857848, 0, 6.3987686855106753, 0},
    {0.1976785823219385, 0, 1.7638604800387025, 0, 4.8361642966959986, 0},
    {0.25748835855269042, 0, 1.5139022426934259, 0, 3.6267811766333677, 0},
    {0.33539422435852245, 0, 1.2710223159292557, 0, 2.6892467747299023, 0},
    {0.43687134581673109, 0, 1.0382060948507648, 0, 1.962029429912642, 0},
    {0.56905145925143941, 0, 0.81930568704601658, 0, 1.3990591003761264, 0},
    {0.74122408433725917, 0, 0.61898871240606546, 0, 0.96625033775034597, 0},
    {0.9654893846056295, 0, 0.44242142252681238, 0, 0.63858130058646601, 0},
    {1.2576085579027381, 0, 0.29456134609178436, 0, 0.39744531084007151, 0},
    {1.6381115216054165, 0, 0.17902460606513859, 0, 0.22812587144467955, 0},
    {2.1337397398849003, 0, 0.096731512924018395, 0, 0.11750044630172107, 0},
    {2.7793255938411972, 0, 0.044890091069154203, 0, 0.052413259039778844, 0},
    {3.6202403752377985, 0, 0.017103656384071717, 0, 0.019335096982656754, 0},
    {4.7155829470085404, 0, 0.0050447857307352253, 0, 0.0055559352126079683, 0},
    {6.1423331672160328, 0, 0.0010668286530526345, 0, 0.0011506008926903206, 0},
    {8.0007619759962232, 0, 0.00014635236575872781, 0, 0.00015524285800681673, 0},
    {10.42147836235983, 0, 1.1432038596064104e-05, 0, 1.1968469290492302e-05, 0},
    {13.574608466415569, 0, 4.2899943361343762e-07, 0, 4.445292502894292e-07, 0},
    {17.681751917465487, 0, 6.1975765033237533e-09, 0, 6.3704811095274279e-09, 0},
    {23.031555690486144, 0, 2.5829303382404794e-11, 0, 2.638420183724823e-11, 0},
    {30, 0, 2.1324774964630563e-14, 0, 2.1677320018915495e-14, 0},
    {0.0092106099400288514, 0.0038941834230865053, 4.7212085234900103, -0.39990436441482552, 92.081275639458269, -38.950158411499316},
    {0.0036235775447667363, 0.0093203908596722635, 4.7210164978291758, -1.1998812693344656, 36.220724047561298, -93.226065706594696},
    {0.00070737201667702906, 0.0099749498660405451, 4.7209653983207236, -1.4999426917300644, 7.0643924940609768, -99.775007900207939},
    {-0.0058850111725534584, 0.0080849640381959013, 4.7210054058799527, -2.2001192011508754, -58.843642462510317, -80.877220089604279},
    {-0.0098999249660044544, 0.0014112000805986721, 4.7212180768494081, -3.0001119778006879, -98.975521939865601, -14.130535027645504},
    {0.46053049700144255, 0.19470917115432526, 0.90610058322018849, -0.33402855158242606, 1.4930584099283011, -0.82823362676960344},
    {0.18117887723833681, 0.46601954298361314, 0.77541043687489319, -1.0706621525679723, 0.34492347081759739, -2.0615386559958973},
    {0.035368600833851453, 0.49874749330202722, 0.71211655433115439, -1.3932521193292888, -0.24107317658800126, -2.2818044993225559},
    {-0.29425055862767291, 0.40424820190979505, 0.6429349965206943, -2.2622768775524387, -1.449538297774138, -2.193743259072197},
    {-0.49499624830022271, 0.070560004029933607, 0.86557964599070258, -3.2153338917065875, -1.7568386862646588, -1.0992210400247617},
    {1.3815914910043277, 0.58412751346297576, 0.17451898249061132, -0.16678411027841333, 0.20529507973699665, -0.23192836335565231},
    {0.54353663171501043, 1.3980586289508394, -0.20545343266907662, -0.53341560731304061, -0.38039282929328117, -0.55116036716050765},
    {0.10610580250155435, 1.4962424799060816, -0.51109551448036172, -0.73945320574221629, -0.76955085245465271, -0.62610198612621937},
    {-0.88275167588301873, 1.2127446057293851, -1.5535171896608193, -2.0074706398008044, -1.9263828043878086, -1.2347879682676526},
    {-1.4849887449006682, 0.21168001208980081, -0.430308853812092, -4.999617888336191, -0.91687657183631688, -3.0695754823712851},
    {2.7631829820086553, 1.1682550269259515, 0.0094221911723960609, -0.043094128653942181, 0.008302340818438364, -0.049901524663584766},
    {1.0870732634300209, 2.7961172579016789, -0.23375690253992834, 0.052419569149520957, -0.24180270450255043, 0.089954634755304547},
    {0.21221160500310871, 2.9924849598121632, -0.49098641722031305, 0.30916422512013381, -0.45258855427578842, 0.39546518281305404},
    {-1.7655033517660375, 2.4254892114587703, -4.060532673867538, 1.4554963782683774, -3.4862463234788232, 1.9225323169755255},
    {-2.9699774898013365, 0.42336002417960161, -4.9632521414986828, -13.984512249726251, -4.5340544070960771, -11.242333845296965},
    {6.4474269580201957, 2.7259283961605538, -0.00072088637802976288, -0.00016260257504879558, -0.00077139510263040897, -0.00015410082866081928},
    {2.5365042813367156, 6.5242736017705845, 0.025246086597471695, -0.027348658247365192, 0.024167918057895456, -0.02973423759426367},
    {0.49516041167392033, 6.9824649062283815, 0.039899439493712011, -0.28522809389080434, 0.020066734556131165, -0.29016517232148537},
    {-4.1195078207874207, 5.6594748267371306, 26.369002448074472, -13.084770832478716, 24.503909692961763, -14.13813094673508},
    {-6.9299474762031181, 0.98784005641907047, -390.9948329931284, -301.41917175212978, -365.54214691036799, -274.9300452346651},
    {11.052731928034621, 4.673020107703806, 8.8716411582331275e-07, 5.6094830616552576e-06, 1.0085554701866679e-06, 5.8076195172038669e-06},
    {4.3482930537200835, 11.184469031606715, 0.0032746915946544287, 0.0033136081911267091, 0.0034526828090198337, 0.0032403694218165521},
    {0.84884642001243482, 11.969939839248653, 0.15305440555973113, -0.02208011194289286, 0.15271993297281417, -0.028495972921368851},
    {-7.0620134070641498, 9.7019568458350811, -85.392300512797149, 415.99449680027965, -68.963955007926145, 408.88502803314935},
    {-11.879909959205346, 1.6934400967184065, -52720.200793918091, 2650.7494883657896, -50481.267398972144, 2863.6936993002359},
    {18.421219880057702, 7.7883668461730107, -3.6673576800855088e-10, -2.7609519920612043e-09, -4.0139997640278491e-10, -2.8204485571154168e-09},
    {7.2471550895334724, 18.640781719344524, 0.00018450607776673288, -7.4875302289893574e-05, 0.0001844890075068913, -7.9828964572851085e-05},
    {1.4147440333540582, 19.949899732081089, -0.018372038982610511, -0.065530068215395976, -0.020040418137890259, -0.065208869993582594},
    {-11.770022345106916, 16.169928076391802, -510.48652373197513, 36368.959635226653, 243.03263456979724, 35848.420695552682},
    {-19.799849932008907, 2.8224001611973444, -42680949.099460572, 103562188.09068185, -41235985.828174151, 101120989.02692017},
    {26.710768826083669, 11.293131926950865, 2.7687852403794486e-13, 5.1176224868630806e-13, 2.8463107238494436e-13, 5.1800645259344669e-13},
    {10.508374879823535, 27.029133493049564, -5.054338780847341e-06, -3.8356878487964036e-06, -5.1476920627343311e-06, -3.779350371699298e-06},
    {2.0513788483633841, 28.927354611517579, -0.0051207614435768902, 0.029466846559283496, -0.0046217399031891846, 0.029595016278026454},
    {-17.066532400405031, 23.446395710768112, 5005539.7736025769, 3350776.0833716062, 5002191.9774276782, 3246457.0757257217},
    {-28.709782401412916, 4.0924802337361488, 529614661370.77374, 438300334436.64832, 521582197441.75696, 429442543701.72784},
}};

}  // namespace diracshell
