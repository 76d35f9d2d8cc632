// Generated by tools/gen_field_fixtures.py; do not edit by hand.
// Expected values carry 50-digit provenance rounded to f64.

pub struct FieldCase {
    pub sv: [f64; 7],
    pub ov: [f64; 7],
    pub params: [f64; 6],
    pub expected: [f64; 5],
}

pub const CASES: &[FieldCase] = &[
    FieldCase {
        sv: [2.266446036658931, 0.5686103294560129, 23.983267412595016, 0.2818795729973426, -1.2820778524334342, 15851.531068450322, 0.6165690290375575],
        ov: [-18.978687001465506, -8.458115356892774, 2.2670422834517874, 0.09672051308911722, 0.6359993588330839, 909.0678959601064, 0.6542668893513031],
        params: [0.053317970826354456, 0.05225870764356236, 0.09386630801287446, 0.5063551564612718, 0.7616851956707873, 0.4066770173837712],
        expected: [6.8755233849419675, 226.10463420904702, 16722.955369567575, -2.286522484525604, -16722.95521324996],
    },
    FieldCase {
        sv: [2.3541669386659136, 7.8639207042140855, 17.234374316768385, 0.04279990189943106, 0.17977646812668746, 5802.353561003593, 1.178213517969638],
        ov: [-13.437589630039652, 16.189289582241006, 16.539384858098188, 0.050579476773433274, -0.7589933934050381, 15682.913338977218, 0.4468318599366735],
        params: [0.09861388219004921, 0.0757951761982843, 0.06326865429049996, 1.5638375255972408, 0.13283422160853292, 0.4054437291798302],
        expected: [1.1058955904614847, 3284.856634917506, 7591253.564248273, -13294.656841616457, 7591241.922690356],
    },
    FieldCase {
        sv: [128.928766609061, 1.6959912733804936, 14.49254173574095, -0.2419232350616567, 0.7838815225691611, 16795.13727541992, 0.564981616161215],
        ov: [183.54533825702734, 4.685880245721056, 13.438580763939724, -0.1585277230443224, -0.9712033444439984, 36473.12914128663, 1.0633790748429197],
        params: [0.04694743465803548, 0.0766620311122046, 0.09790625944662502, 0.8672258713289709, 0.23246003968442025, 0.41127246033051573],
        expected: [0.6958005207121104, 3813.3264000716467, 52861968.26242928, 2487538.136904723, 52803407.49038385],
    },
    FieldCase {
        sv: [218.759955423249, 4.400950470595646, 14.051936979301628, -0.03323078383708589, -2.958295300799653, 11561.283725208297, 1.0024923039002085],
        ov: [237.74172160157923, 12.482202895106475, 15.20723005564408, -0.23091234914594372, 1.4131073063736224, 6781.182543782929, 1.0480824776433562],
        params: [0.020510010040217436, 0.0689789533939856, 0.08130888730529492, 1.0364683107103179, 0.257736676079971, 0.477654115946268],
        expected: [2.0828436381002824, 2039.9919187946157, 4082711.857237399, 11663.672319153027, 4082695.1965551977],
    },
    FieldCase {
        sv: [432.99895896237035, 8.157440837436248, 5.890841015392902, 0.009516066608829421, 0.5439031149648059, 4218.525607364419, 1.1697119236222862],
        ov: [465.97178751470597, 1.4321461418827512, 17.52166522665305, -0.2332359658844203, -0.9659280549667834, 5892.441724756047, 1.151401026378227],
        params: [0.033873712952021295, 0.07498462750587012, 0.025698620322761323, 1.4186875874519382, 0.3371863982339352, 0.1760382224830459],
        expected: [4.547248819320305, 505.7475059178871, 502131.21405996877, 435236.8413981864, -250408.96154704233],
    },
    FieldCase {
        sv: [455.60158261350404, 7.352283598295309, 21.362108251798062, -0.21819528049284748, 0.9339849997395553, 2103.004602735542, 0.5287951817939297],
        ov: [399.5662722791472, -0.025064573006214452, 35.852879187359115, -0.07334873203951378, 0.1826848301226534, 1770.5060833759358, 0.7616441315385318],
        params: [0.05391146658066708, 0.046618939956984476, 0.07442824138645236, 1.6021485916717633, 0.6487629954710812, 0.43412812389702204],
        expected: [4.786151714094102, 130.89911791832793, 107250.2967065798, -76.44688282157074, -107250.26946130955],
    },
    FieldCase {
        sv: [283.4272464782442, 5.184269498441264, 18.424251234631235, -0.244549158156239, 2.2389239701957377, 27054.32196320334, 0.6159541524438616],
        ov: [330.9600386999955, 11.638298215953284, 36.70298413136957, 0.20971342472237048, -2.990648996366544, 29582.88989938173, 1.067664097302559],
        params: [0.09323808021880185, 0.06347478683107978, 0.06757510864345699, 1.2758459903051778, 0.7188672422135485, 0.25888268719606417],
        expected: [4.64863517684109, 1244.0101275763286, 5105449.723104508, 318337.37269841967, 5095515.498189694],
    },
    FieldCase {
        sv: [418.6649054670808, 4.629275770540257, 37.09039701565961, -0.17471232905283945, -0.6676430633604045, 20522.53531943844, 0.6496451986424245],
        ov: [427.7138993902617, -0.33229533345107853, 20.255842707306375, -0.17539969984227305, 1.549763550789202, 31231.28428570318, 1.0073762303172495],
        params: [0.042236980563165966, 0.06859745715889806, 0.046766245184149895, 0.774617749352043, 0.5380791348656101, 0.239182593152439],
        expected: [2.669717974671398, 1328.3028261543523, 39955671.21542599, 10227.494819942453, -39955669.90645472],
    },
    FieldCase {
        sv: [396.84860791256995, 9.553667283720017, 10.704428687609028, -0.20711324218665958, -0.14180741939129443, 37652.21968298929, 0.9590227295839783],
        ov: [409.01039661562277, 6.365386061306759, 18.975561507124116, -0.012740624024965841, -1.8561198999904287, 31995.28170045968, 0.9481053569030402],
        params: [0.043167816408593386, 0.09754018200713542, 0.031538364022955796, 1.3035249444886727, 0.3847335835169283, 0.4989021294188227],
        expected: [1.2268439126642465, 12909.738246104082, 65347128.448256314, 1194707.1258230591, -65336206.43499603],
    },
    FieldCase {
        sv: [450.90051020448334, 9.084744036425757, 21.257122411788057, -0.16994213449522957, 0.47216042117326334, 19195.967918266288, 0.8116265402059459],
        ov: [495.79068722020656, 16.804945550720955, 14.899308266278792, 0.09480263795484711, 0.5301819433075439, 10229.535443140196, 0.824318848854497],
        params: [0.030488910195147025, 0.07002630612319403, 0.059925832152051384, 0.9147865579458128, 0.8795645370804139, 0.1301327532800436],
        expected: [7.230296882953832, 650.0995129541855, 2940648.61272657, 1010042.9626783624, 2761743.557442403],
    },
    FieldCase {
        sv: [210.69502424355596, 9.076880197997324, 23.377595780909985, 0.11244522788353856, -1.0959850003107854, 11941.034514075785, 0.9808655002434754],
        ov: [189.60289813786528, 11.260463002548285, 39.9129482340645, 0.1478506415619828, -1.0603351244640944, 39993.439150545724, 0.6703205689131375],
        params: [0.057276747236410325, 0.05977160988516461, 0.0986054317415447, 0.9581967381493377, 0.6568063305819221, 0.24156117279000988],
        expected: [1.4350233991612025, 2457.8450540880353, 59034053.85442186, -2010427.870943926, 58999810.96802355],
    },
    FieldCase {
        sv: [60.842301643012405, 6.560532658146135, 8.828337254397844, 0.13319760261463404, -1.8960681946091626, 13264.444135240816, 0.9403035738497282],
        ov: [62.68354709099964, 13.512890183705489, 6.584340147350377, 0.1722832539639491, 0.7283444942439465, 39788.74740798242, 1.054681609817035],
        params: [0.07620478747640431, 0.06007130930664637, 0.09197773069033505, 1.2204677839138662, 0.7945321470507141, 0.3380152130628464],
        expected: [5.524367214570977, 956.4495378616998, 13521151.908110777, 181121.83446373575, 13519938.749982864],
    },
    FieldCase {
        sv: [390.9524216778527, 7.92728793011337, 9.39807666463946, -0.1969702278314378, 1.8152174514283044, 38887.52244197719, 0.8450498614561297],
        ov: [374.4250430708097, 4.267167956362631, 10.278347921625524, 0.04256138393880593, -1.2993171717404155, 7093.895527716549, 0.4240598805156295],
        params: [0.03064020836944073, 0.049317324868980834, 0.07442972282781958, 1.18103819402254, 0.1900834257565091, 0.18127354882303093],
        expected: [0.9005766286674984, 15220.031398876628, 15133609.197046759, -9609396.802387433, -11691262.567541815],
    },
    FieldCase {
        sv: [345.17796524012346, 0.3459054549604982, 14.033881355276272, -0.2069109696141311, -0.75264965933983, 8731.375720137385, 0.7865919438598565],
        ov: [387.7587176849995, -3.8325729682803025, 34.02835627934934, -0.25589434665867855, 1.1286554841644991, 28133.23441887793, 0.4743210277074066],
        params: [0.09935381853802276, 0.021463277390957332, 0.07485048290458876, 1.4429395322624734, 0.2667773253306014, 0.21566121172900277],
        expected: [1.24334890181334, 2872.1363871455924, 8608118.677778684, 3812918.246773677, -7717600.767994066],
    },
    FieldCase {
        sv: [237.33384305403067, 1.5014821441710915, 33.692787700875876, -0.26139946762953425, 1.8586941124094145, 38114.61494801536, 0.9530614297008632],
        ov: [293.03680002502256, 2.1704859478515344, 11.800250422474987, -0.15872411392828206, -1.8805815401469106, 5124.134049724636, 0.9044657529621841],
        params: [0.019533523819265666, 0.0625942304070079, 0.06298590724991099, 0.7823175077003786, 0.08196266438275698, 0.43556016074968273],
        expected: [0.054833334265901805, 167306.71874471963, 1024962049.3911217, 36122.96755473266, 1024962048.7545768],
    },
    FieldCase {
        sv: [236.0861451663062, 4.290031517960065, 19.30480757771372, 0.18120303200486731, 1.431118418192584, 26991.55121466749, 0.8446274733300565],
        ov: [280.2680911235352, 7.6553644468749, 23.063763101976257, -0.20935208236066227, -1.1853107994562855, 37232.2443935694, 0.6652413816467855],
        params: [0.08994022032825857, 0.09028993292528975, 0.08301237824880316, 1.0478333338732877, 0.7525613482300668, 0.3803330548021348],
        expected: [2.5327110160873936, 2775.012757316893, 19703613.62239391, 167511.850589488, 19702901.55181462],
    },
    FieldCase {
        sv: [401.0183512431537, 2.034252994900259, 2.0080804390126294, 0.0945032009458257, 0.9204103029720823, 39104.443904789456, 1.1902861294749987],
        ov: [354.34200416591034, -3.3445418599836887, 14.412680414639999, -0.07559930906941145, 0.5679611682038991, 37596.1342837499, 0.5013762618549289],
        params: [0.06489278768664451, 0.06334836585200272, 0.06359377066917897, 1.6281256913825892, 0.2839931711301271, 0.4446855747219033],
        expected: [5.638307851852287, 4770.696153824429, 63348229.95260426, -60979090.739420496, -17162422.05289067],
    },
    FieldCase {
        sv: [158.6699636770522, 9.263781591457311, 27.574488766481842, -0.13401032376557404, -0.20477616723251751, 4397.706299067441, 0.6812310584316299],
        ov: [213.77044870940182, 1.1843401712100334, 29.44168063498815, 0.18344064554283918, 2.1885851375474825, 36021.09695245768, 1.078192759342294],
        params: [0.015918369865078497, 0.022727326324964624, 0.03593794952689665, 0.6170446001453284, 0.39213834345463255, 0.486753997498225],
        expected: [3.168258774736373, 195.83965950838916, 2695971.2793478784, 27.25160018280563, -2695971.279210145],
    },
    FieldCase {
        sv: [122.05776849139966, 8.603053187130449, 26.468643809750017, 0.14911045313192134, 2.261259433552554, 31524.049526702336, 1.0435532467917774],
        ov: [83.00296201103586, 9.526018006283662, 1.6383372221169104, -0.0415599071274565, -1.1964426013350593, 13426.295568594891, 0.723012895830331],
        params: [0.08554775371390379, 0.05125044846993189, 0.05909667675221567, 1.2625524324461468, 0.6325909869503439, 0.4833646541668345],
        expected: [0.583859229900606, 28876.81637890974, 24607208.78091794, -2891.9122617008006, 24607208.61098488],
    },
    FieldCase {
        sv: [30.79059800836864, 7.466407106706399, 2.517317682018768, -0.0628096512963055, -0.9272587358736915, 29716.85432728564, 0.5822108123237117],
        ov: [34.34684029251645, 10.742886575068686, 19.207257543404328, -0.14675293056941502, 2.3841057298706008, 6626.90858654333, 1.0013879072581306],
        params: [0.016594356051885868, 0.029795820015107825, 0.05027828589422912, 1.10954620817157, 0.8010467273583334, 0.34635653497278857],
        expected: [2.88229114199643, 2253.2088185869757, 3665903.439990497, 1515080.1147161333, 3338170.1989751677],
    },
    FieldCase {
        sv: [60.035783094289364, 7.910665001778465, 2.143714787890511, 0.12985393146157542, -2.5247085947085877, 35852.75015849795, 0.9278005226876863],
        ov: [20.494163241803378, 6.597047283595931, 24.20065647225311, 0.2480124667995301, 2.0135143407193454, 20999.71377324545, 0.7827204255386458],
        params: [0.05888394622550759, 0.07287493230781092, 0.0237963123893792, 0.7326330972135345, 0.43838148818083483, 0.32705013954334916],
        expected: [8.617745145697057, 815.3374515406226, 22353230.655746575, -22303267.363009293, -1493715.3956269405],
    },
    FieldCase {
        sv: [87.64510862845681, 2.3056572343178603, 3.198121937163635, 0.08084472209035137, -1.2495534568716389, 7182.019800167536, 1.1991946701782759],
        ov: [82.66056496623526, 5.124367885412172, 13.014183661159889, -0.09096840786888216, -1.2282149904408688, 9512.293957426396, 1.1076423002154452],
        params: [0.08236083385396152, 0.019970329219261264, 0.05615210596539494, 1.0043007857054653, 0.837166718023595, 0.12133597377925644],
        expected: [3.685350646796799, 717.8142135179136, 2996330.2748909276, -2301555.4945585313, 1918550.8650268763],
    },
    FieldCase {
        sv: [407.0128995365877, 0.2841439369446311, 7.505009619797633, -0.2865448864837501, 1.2031951006762394, 38929.14037536901, 1.1660413235894873],
        ov: [448.63629634934756, -8.021346135852918, 4.438126601738237, -0.03197495298141417, 0.5056996370157861, 21014.41566601164, 1.1102870826638327],
        params: [0.06644342723304968, 0.09588173530220405, 0.01285584689120869, 0.6793244221755299, 0.8209286814830906, 0.1908021402310736],
        expected: [10.634407087336022, 896.8104019009409, 9550747.896541119, 7329419.096676147, -6123430.500019056],
    },
    FieldCase {
        sv: [181.58794400331192, 7.992788210482471, 11.409792381283403, 0.21576576713723566, 2.1663797055087928, 27731.209720811872, 0.5959729582415737],
        ov: [169.24278043934314, 4.10777341323677, 39.439470507077026, -0.1066286801943315, 1.2179373743462696, 20787.38297184821, 0.5041129972550052],
        params: [0.07429862961866833, 0.024265202098740873, 0.05413820747401589, 1.3697421134946315, 0.10074347675897688, 0.3676107698000281],
        expected: [0.3918390173433045, 22532.147495074252, 136830611.49589136, -6549390.071785695, -136673778.5093657],
    },
    FieldCase {
        sv: [456.73883285530906, 3.5950456417629924, 32.004015103762924, 0.20663973384690565, 2.4576023580400164, 16140.099334157992, 0.42052432683790475],
        ov: [424.79281980788767, 4.634332258950021, 27.570160458211202, -0.28527497815888964, -2.7247768164551687, 26687.24899920375, 0.7311882250212325],
        params: [0.099928402450194, 0.0331364300710259, 0.08900504675452094, 1.273208449396723, 0.9906065094374591, 0.2396508201191498],
        expected: [1.0296300265093712, 3590.438639061536, 18078415.81525255, -259328.47477709438, 18076555.731979012],
    },
    FieldCase {
        sv: [141.22227077141963, 5.9281236131869255, 37.959905811101, 0.13322910681476074, 1.9016190924205811, 2626.308207256765, 0.723163614725975],
        ov: [171.0595127880179, 4.133703515979664, 34.400337251208036, -0.2722459480482026, -1.7112571978748017, 39693.74680600362, 1.1908552620151935],
        params: [0.05489628945170271, 0.03645848749587946, 0.05197601038901357, 0.5711990173499095, 0.8990681399192136, 0.3386012037005273],
        expected: [1.6133059405578722, 203.0173995928345, 4121080.2716820734, 179.36655927552144, -4121080.2677786835],
    },
    FieldCase {
        sv: [312.34900390753126, 5.914911002327248, 33.94142406412289, -0.17424336796113038, -1.9794025571308238, 38616.21982929513, 0.7804998073439138],
        ov: [326.3538481914369, 9.339304348216636, 1.27674107798682, -0.16685442819853627, 1.175387548454912, 3753.2482137396455, 1.1017547614258913],
        params: [0.08315623754345082, 0.08920480409592625, 0.025413187217694654, 1.1262573408910437, 0.26741070582712945, 0.48155703841318526],
        expected: [0.9157194416540555, 14561.391813217153, 335024239.10073525, 109.23054607501169, 335024239.1007174],
    },
    FieldCase {
        sv: [78.17040231964128, 5.839211487596715, 12.963630713011709, -0.23221862361208195, -1.6790937184806862, 25716.636537933482, 0.8225459852641384],
        ov: [78.15143580612505, -3.6854789940546597, 29.643794644749946, -0.08103384862941757, -0.2552154043851463, 6734.633031932006, 0.8196460054797836],
        params: [0.07993554376978713, 0.07466443141859176, 0.08519474709671178, 1.6586446881631045, 0.4765417555847135, 0.3136737015800354],
        expected: [4.5389127261708335, 2584.9758670923957, 4785791.486943224, -163.3416828426026, -4785791.484155755],
    },
    FieldCase {
        sv: [198.65161929453186, 2.8226676317601216, 10.06904204860587, 0.07463161861878476, -1.1273644222867494, 37246.6582534868, 0.9673566729622948],
        ov: [142.540465141554, 5.096877458121193, 31.42673490838371, -0.1669016726149666, -1.1277291862507945, 6671.421119736676, 0.904900165394521],
        params: [0.034348541517007086, 0.08503977441520974, 0.03372864797505978, 1.0532715487510371, 0.09739756571160195, 0.13152604256667483],
        expected: [1.470373998470739, 8305.756233598118, 95399549.58837523, -94310862.37674452, 14371336.034607934],
    },
    FieldCase {
        sv: [50.22631180743192, 3.173031018412492, 23.64576693257634, 0.11583984363592675, 0.3483166628312288, 13809.588883606033, 0.5633315554218493],
        ov: [33.129357350726316, 7.126603843934711, 16.88298869056017, 0.21714402478578748, 1.8813161496524264, 15664.777128624326, 1.0639983632291798],
        params: [0.03107489660565628, 0.07753713017537765, 0.017832219716424028, 1.7459887326888062, 0.5932186861897891, 0.44912070098528484],
        expected: [2.3453332903973894, 1957.892960857999, 6681307.199797354, -705.778502272117, 6681307.162519971],
    },
    FieldCase {
        sv: [143.82769300877163, 9.135561339435638, 19.5589231452963, 0.010478237672901125, -0.7808822564833064, 26852.25973361343, 0.8986798239753692],
        ov: [107.50232892558, 2.273225959168629, 35.07411509815324, 0.18213965329292392, -1.0058698754646391, 12886.924314960264, 0.6894669632516559],
        params: [0.08564817283680641, 0.04892789631263678, 0.03977321828882371, 1.7989547381694952, 0.5961326894516384, 0.2441849720829884],
        expected: [4.0949331386318, 3320.6482287219446, 20133214.61366299, -897492.6542988716, -20113200.58109332],
    },
    FieldCase {
        sv: [466.32815365792123, 2.68872412107805, 17.53348635989081, -0.25757519116562155, 1.1658190106521111, 33727.687900685414, 0.41408778084499576],
        ov: [478.1168812959136, -1.7016178575209318, 24.77994606903669, -0.008096917717800578, -0.2536294654958962, 17502.98510868996, 0.4678468768939545],
        params: [0.023682279990462282, 0.05516850782490477, 0.08009368324166885, 1.1569715669644776, 0.8655919780841399, 0.2900135692982813],
        expected: [3.8007695546867364, 1385.7786817476397, 2909522.8782987446, 48346.509012616574, -2909121.172177279],
    },
    FieldCase {
        sv: [416.82731665836263, 0.7971204657881473, 4.005938651435476, -0.14455492637410777, -1.3646433688380555, 18883.578086878053, 0.7604915188111474],
        ov: [466.2650056401244, -6.886404682249449, 33.44329043079639, -0.21109161830131767, -0.7539736327346669, 7083.520413011134, 0.9904326441800079],
        params: [0.026165660901605582, 0.04506040733880343, 0.08362473828838504, 1.1166946174990504, 0.28565644526282424, 0.06699360107828321],
        expected: [11.01896245171052, 504.3032975244464, 304353.41070186184, 298254.5436164743, -60623.64075164746],
    },
    FieldCase {
        sv: [86.22909438890397, 3.725503449504926, 23.952572570063325, 0.07579241239010354, -2.285616342438548, 12544.847631008475, 1.0379594622032426],
        ov: [43.72967031554217, 13.618943295184158, 6.415532035464205, -0.2646853944801504, 0.6147678625418389, 24859.74616869603, 0.4657206307937239],
        params: [0.08285590924375495, 0.06310236471383668, 0.06738947931800457, 0.6447616110705421, 0.33221942729201326, 0.3863847894494693],
        expected: [3.286793196876276, 710.5575179957359, 1024159.6105963902, -420.77227695046395, 1024159.5241600014],
    },
    FieldCase {
        sv: [318.6900711165009, 6.748984600732562, 18.88920902422506, 0.21097569371356278, 1.0715061109234805, 13073.588343793617, 0.46279862326032223],
        ov: [363.2429634590169, -0.17433265014217003, 8.448571683621356, -0.19845762257865293, -0.9501639594712328, 12727.348267117712, 0.9525376949764887],
        params: [0.04569808673241955, 0.075114077817545, 0.09382334368549629, 1.9850836854725684, 0.27881123108699074, 0.4965747948297371],
        expected: [1.9302988906538459, 1983.0370608196051, 18726765.86033567, 10171.46158151406, -18726763.098015707],
    },
    FieldCase {
        sv: [146.33529418988988, 4.547607727960971, 7.764462908155749, -0.05579149884394535, -2.40416584236529, 14996.711903685262, 0.41776250296855255],
        ov: [87.58870570744284, 9.341939388068978, 31.3531592361052, 0.2725251948368464, -1.3979934583265954, 11314.54924941714, 0.7561982682285615],
        params: [0.018356006633986115, 0.06598570251865593, 0.07487018665853788, 1.511387628176264, 0.5515267773956404, 0.4189969661455585],
        expected: [2.9257045664458334, 1036.0119065670015, 13582374.822379844, -5813131.715154536, 12275520.578691658],
    },
    FieldCase {
        sv: [358.09433199082355, 3.9587280405187997, 8.254368243939716, -0.24769506535073635, -0.43792401631332567, 34531.958804036396, 1.0492498021710106],
        ov: [375.56893431417876, 0.8178876732452363, 10.110296628734853, -0.16047465439901484, -1.2621503387633908, 3095.057364354424, 0.5883188500786815],
        params: [0.07411956335905186, 0.0630972496965477, 0.015540821386377558, 0.6951732890053008, 0.09207529172719932, 0.1047384605497114],
        expected: [0.7368872237358916, 11804.908695950653, 6503761.7205218095, 5981977.595914092, -2552422.488403255],
    },
    FieldCase {
        sv: [247.5077228386592, 8.12759377925063, 13.530277266695503, 0.21120550148125888, -1.8259778999178142, 32416.296190808884, 0.46131175150766196],
        ov: [202.5181765132227, 14.143181932346424, 19.323806484897926, 0.034180839010515884, -1.6761579179568329, 1290.8454853517817, 1.0312837269416963],
        params: [0.04104664301593035, 0.051469959641731663, 0.08799619665989816, 1.514458135914995, 0.18099962872477587, 0.12497828008774939],
        expected: [1.8543846576319452, 3792.7033399118723, 2269528.396147954, -1837118.3188085167, 1332574.7347222487],
    },
    FieldCase {
        sv: [20.535136184861635, 0.6990691629941604, 31.15257454127632, 0.24547063277857478, -1.5309460646198454, 1790.7437070735034, 1.1350906840375012],
        ov: [52.71333916890244, 9.028882582864714, 37.4160416887378, 0.17891366707977818, 0.9057062905196799, 26345.799984459503, 0.6069023058092116],
        params: [0.010468613940966733, 0.06403253837609797, 0.08336929506377914, 1.7280733788773563, 0.5163419851752662, 0.15940935880368906],
        expected: [4.302591568808491, 277.47747088800213, 962217.5579910302, 25901.851143650965, 961868.8699680188],
    },
    FieldCase {
        sv: [484.92715352687367, 5.13410117393854, 32.5157860462629, 0.07447123319733895, 2.5387511493680033, 25497.685514868077, 1.0121608006533438],
        ov: [470.16795769089094, 4.3046236831363105, 11.47351734492227, 0.14740795398265766, -1.7735313112592184, 21439.820933816813, 0.8200160410386468],
        params: [0.09156700494422501, 0.09600858014081601, 0.04365392721062395, 1.1875222887704922, 0.7664105874903461, 0.318006009264577],
        expected: [0.6357204360758983, 20350.928975090366, 15361960.795833018, -8830.925049471613, -15361958.257574892],
    },
    FieldCase {
        sv: [274.9109267069332, 3.074821652826515, 12.304032348207278, -0.21968650577236148, -2.4708971655987786, 21310.694299805014, 1.0114919834030713],
        ov: [322.79268610017436, -0.45485807152555546, 31.60350144700889, -0.0738905792964249, -2.289447931244461, 23837.96558877774, 0.6156321776970557],
        params: [0.04639999775783778, 0.08353739543407317, 0.0925720714748366, 0.7228390331584704, 0.8417215440844261, 0.2691104838862517],
        expected: [3.314797261155891, 1762.7801326854196, 1748964.0947342843, 775623.3136623147, -1567572.6075602386],
    },
    FieldCase {
        sv: [131.99942194298487, 3.5215960549399843, 27.368524919478883, -0.07563671695745211, 1.2948464672293778, 1973.1023796940103, 0.4178038747045705],
        ov: [103.77945119902873, 9.60814044759211, 22.536706134722643, 0.2671830166069625, -0.12935430171777068, 35039.31770237263, 0.5560002658183448],
        params: [0.05431292820947688, 0.025853963411110098, 0.032317803835400144, 1.0696965951527135, 0.09308704489517977, 0.30702016936070614],
        expected: [0.5665787374151363, 557.7731253228975, 2999484.223735234, -3118.8219275179877, 2999482.60228099],
    },
    FieldCase {
        sv: [65.25326252919666, 5.583760669810744, 7.736141321640841, 0.10881500428780855, 2.921943789685007, 9975.801214703428, 1.0480053836355965],
        ov: [9.287592415789177, 11.84404402009287, 31.503254090743194, -0.11558630743238918, -2.150492064629779, 23689.258554986704, 0.6941112078135522],
        params: [0.04794488550955833, 0.07324163277338937, 0.04189251815907039, 0.6666296798498716, 0.6912564755741535, 0.27128272510941465],
        expected: [6.42101202257496, 417.30423730078843, 11809902.034043157, -8724849.38119046, 7959320.908798511],
    },
    FieldCase {
        sv: [459.7114394046324, 4.151612982765918, 29.95627375246845, -0.21036927388356041, -1.6609176219852662, 6074.674964588368, 0.8528430574444288],
        ov: [506.33022388219115, 7.681353796434389, 25.205404895368645, 0.22621264880791242, 2.312865081747759, 7887.998463995386, 1.095735758967317],
        params: [0.012053407513152793, 0.03666563718491898, 0.024427694469131872, 1.1043879677241581, 0.2817418283073322, 0.26728152693082485],
        expected: [0.9944852600693669, 1963.9619811610382, 7446124.7904387815, 32768.24337715054, 7446052.688304923],
    },
    FieldCase {
        sv: [467.7835768290354, 7.122569322743042, 3.41582678254976, 0.2232496460838413, -0.9195393788515737, 38224.597181682984, 0.5328297392174056],
        ov: [441.02173705454646, 4.430622534098124, 30.11212244248222, -0.25037834617453203, 0.2773082521661337, 13523.342429929375, 0.45724496745606563],
        params: [0.07534297374373673, 0.09095688126359976, 0.058230216053016336, 1.2195382636984529, 0.2967648086480674, 0.21956602365520728],
        expected: [3.8356398546508217, 2021.8451715622, 36081659.66568388, -35290385.538171045, -7514975.235986254],
    },
    FieldCase {
        sv: [40.58686214415047, 4.963422483956642, 38.42800446263889, 0.10117422760929917, 0.7395014063164396, 24719.068445144865, 0.9157659019457524],
        ov: [51.582107404133836, 0.5601247703136645, 31.09545116574446, 0.2687515557704155, 2.5452510277533045, 30918.419780669446, 0.7550109309577335],
        params: [0.05134883586933505, 0.09101518897106095, 0.09005758270138868, 1.3736604519921272, 0.6294906238232559, 0.4749405850063633],
        expected: [2.771834624640636, 3629.2574884477626, 47202417.44602169, 1.3966072965002239, -47202417.44602167],
    },
    FieldCase {
        sv: [119.1830244143719, 5.691143825720729, 15.577926697177753, -0.013186777998027255, 2.313997546982207, 19083.0448956377, 0.7662079704030882],
        ov: [81.52514211123312, 2.2155233148284523, 35.623232357143515, 0.008696108854431894, -2.6296564354634975, 20436.87167309636, 0.5635015710795173],
        params: [0.03421773968412889, 0.06004894207485731, 0.09908004243440645, 1.7616555413335104, 0.3228267913371472, 0.20919808609959556],
        expected: [1.2154113543757106, 7670.645011760355, 101009895.13265471, -38828961.19593723, -93248649.78729881],
    },
    FieldCase {
        sv: [308.44982778306183, 9.04699739849493, 31.405072704540387, 0.018964084531453596, 0.7375827886993441, 2134.7274425380924, 0.6572945037651978],
        ov: [257.12803980022227, 7.3935038962635, 28.598144313589437, 0.07519929621864724, 1.8786512434016238, 20617.558684456857, 1.0780325014617609],
        params: [0.06501533529669727, 0.05679273083065692, 0.05147220788358898, 1.9420872934908069, 0.3563112924835472, 0.24925625409005692],
        expected: [0.5892034623227405, 1623.7743204693, 10892216.954772094, -134698.85386258282, -10891384.044674616],
    },
    FieldCase {
        sv: [261.7266882861033, 0.7688947404877866, 14.72244252451034, 0.03050030744429394, 1.2592284891616856, 26220.111725909228, 1.0443296594826637],
        ov: [279.6166886750178, -7.185562889470054, 13.392111867754426, -0.101362528083527, -1.8314875366486763, 36235.090212116585, 1.0161835871060287],
        params: [0.09168020557301355, 0.0569805204623353, 0.08117044420509585, 0.8988438501225622, 0.7485174585823022, 0.3122654656962807],
        expected: [5.955579922799162, 1243.9890265506363, 15852750.767828137, 359257.9052336541, -15848679.461217035],
    },
    FieldCase {
        sv: [55.44633443505326, 0.2932871958400019, 13.429703489161154, 0.27054919436094066, -2.572015222604701, 38831.75539595358, 0.8470160992811624],
        ov: [84.31459585795746, 9.298400391320534, 10.143388343526597, -0.017553253793247903, 2.112011213305645, 14362.47014373836, 0.42972023109185814],
        params: [0.08234938698131972, 0.0835615435334561, 0.042797730862830854, 0.9645691938063924, 0.3500307607210421, 0.21473424980992983],
        expected: [3.2023157415241426, 4056.5503989782546, 11005154.582293788, 1941926.983575651, 10832467.261461848],
    },
];

/// |k'| for speed 20, tau 0.2, displacement (30, 3.5), coefficient 0.2.
pub const PSEUDO_EXAMPLE: f64 = 0.7085736762006407;
